"""Circulant inverses: the prime closed form versus the DFT path, and the
exponential approach to the bi-infinite Laurent inverse."""

import numpy as np

import lindblad_spectra as ls

alpha, beta, gamma = 1.0, -2.5, 1.0
pair = ls.ordered_roots(alpha, beta, gamma)
print(f"roots of {alpha} + {beta} x + {gamma} x^2: "
      f"lambda1 = {pair.lambda1}, lambda2 = {pair.lambda2}")

target = ls.tridiag_inverse_element(alpha, beta, gamma, 0, 0)
print(f"Laurent <0|T^-1|0> = {target.real:.10f}  (= -2/3)")

print("\nn    <0|C_n^-1|0> (prime path)     error        dft-prime agreement")
for n in (11, 23, 47):
    col = np.zeros(n, dtype=complex)
    col[0], col[1], col[n - 1] = beta, alpha, gamma
    c = ls.CirculantOperator(col)
    prime = ls.circulant_inverse_element(c, 0, 0, path="prime")
    dft = ls.circulant_inverse_element(c, 0, 0, path="dft")
    print(f"{n:<4d} {prime.real:+.12f}      {abs(prime - target):.2e}     "
          f"{abs(prime - dft):.2e}")

rate = max(1 / abs(pair.lambda1), abs(pair.lambda2))
print(f"\nconvergence rate ~ max(1/|lambda1|, |lambda2|)^n with base {rate}")
