"""Laguerre functions as a spectral basis of the operator L.

Builds the Gram matrix of psi_n, |n| <= 3, in L^2(R, w dx) and compares
the explicit resolvent with a finite-section solve. Run with
``python demos/laguerre_functions.py``.
"""
import numpy as np

from laguerre_su11.laguerreop import (PrincipalParams, finite_section_resolvent,
                                      laguerre_function, laguerre_gram, resolvent_element,
                                      wronskian_phi_Phi, wronskian_phi_Phi_numeric)

if __name__ == "__main__":
    p = PrincipalParams(rho=1.0, eps=0.25)
    gram = laguerre_gram(p, nmax=3)
    print("Gram matrix of psi_n, |n| <= 3, minus identity: max |entry| =",
          f"{np.max(np.abs(gram - np.eye(7))):.2e}")

    psi = laguerre_function(0, 1.5, p).scalar
    print(f"psi_0(1.5) = {psi:.12f};  1.5^(i rho) psi_0(1.5) = {1.5 ** 1j * psi:.12f}")

    z = 1 + 2j
    print(f"[phi, Phi] closed form {wronskian_phi_Phi(p, z):.12f}")
    print(f"[phi, Phi] from u, v   {wronskian_phi_Phi_numeric(p, z):.12f}")

    e0 = {0: 1.0}
    for z in (0.5 + 1j, -2 + 0.3j):
        g = resolvent_element(p, z, e0, e0)
        print(f"<G({z}) e0, e0> = {g:.12f}")
        for N in (400, 6400):
            # near the real axis the section converges slowly in N
            fs = finite_section_resolvent(p, z, e0, e0, N=N)
            print(f"    finite section N={N:<5d} {fs:.12f}  diff {abs(fs - g):.1e}")
