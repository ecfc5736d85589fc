"""Laguerre product formula in its three regimes.

The product L_{n1}^{(2k1-1)}(x1) L_{n2}^{(2k2-1)}(x2) is recovered as an
integral over the principal-series label rho of the tensor product
pi+_{k1} x pi-_{k2}. Run with ``python demos/product_formula.py``.
"""
from laguerre_su11.coupling import verify_product_formula

CASES = [
    (0, 0, 1.0, 1.0, 2.0, 1.0),   # x1 > x2
    (2, 1, 0.6, 0.7, 0.5, 1.8),   # x1 < x2
    (0, 1, 0.6, 0.7, 1.0, 1.0),   # x1 = x2
    (1, 0, 1.0, 1.0, 2.0, 0.5),   # left side vanishes: absolute error
]

if __name__ == "__main__":
    print(f"{'n1':>3} {'n2':>3} {'k1':>5} {'k2':>5} {'x1':>5} {'x2':>5} "
          f"{'product':>14} {'rho integral':>14} {'error':>9} mode")
    for n1, n2, k1, k2, x1, x2 in CASES:
        rep = verify_product_formula(n1, n2, k1, k2, x1, x2)
        print(f"{n1:3d} {n2:3d} {k1:5.2f} {k2:5.2f} {x1:5.2f} {x2:5.2f} "
              f"{rep.lhs.real:14.10f} {complex(rep.rhs).real:14.10f} {rep.residual:9.1e} "
              f"{rep.notes['error']}")
