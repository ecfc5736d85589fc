"""Jacobi-function transform round trip with and without point masses.

For beta = 2.5, alpha = 0 the Plancherel measure has a point mass at
lambda = 1.5 i that the inverse transform must include. Run with
``python demos/jacobi_transform.py``.
"""
from laguerre_su11.jacobifn import JacobiParams, jacobi_inverse, parseval_sides, sample_transform
from laguerre_su11.suites import JACOBI_SUPPORT, _bump_test_function as f

if __name__ == "__main__":
    for ab in ((1.0, 0.0), (0.0, 2.5)):
        p = JacobiParams(*ab)
        F = sample_transform(f, p, support=JACOBI_SUPPORT)
        print(f"alpha={ab[0]}, beta={ab[1]}: lambda_max={F.grid.lam_max:.0f}, "
              f"point masses={[complex(d[0]) for d in F.discrete]}")
        for x in (0.5, 1.0, 2.0):
            v = jacobi_inverse(F, p, x)
            print(f"  x={x}: f={f(x):.10f}  inverse={v.real:.10f}  rel err={abs(v - f(x)) / f(x):.1e}")
        lhs, rhs = parseval_sides(f, F, p, support=JACOBI_SUPPORT)
        print(f"  Parseval: {lhs:.10f} vs {rhs.real:.10f}")
