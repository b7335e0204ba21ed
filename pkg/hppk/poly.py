"""
Polynomials over F_p behind the HPPK key pair
f(x), h(x) of degree lambda, the noise polynomial beta(x, u) with coefficient
matrix c[n+1][m], and the product coefficients p_ij, q_ij of f*beta and h*beta.
"""
from typing import List, Sequence, Tuple

from .bigmod import Nat
from .drbg import Drbg

Matrix = Tuple[Tuple[Nat, ...], ...]


def sample_private_polys(g: Drbg, p: Nat, lam: int = 1) -> Tuple[Tuple[Nat, ...], Tuple[Nat, ...]]:
    """
    Coefficients of f and h drawn from [1, p), redrawn together until
    f1*h0 != f0*h1 (mod p) so f(x) - k*h(x) = 0 has exactly one root.
    """
    while True:
        f = tuple(g.uniform_range(1, p) for _ in range(lam + 1))
        h = tuple(g.uniform_range(1, p) for _ in range(lam + 1))
        if (f[1] * h[0] - f[0] * h[1]) % p:
            return f, h


def sample_beta(g: Drbg, p: Nat, n: int, m: int) -> Matrix:
    """c[i][j] in [1, p), row-major"""
    return tuple(tuple(g.uniform_range(1, p) for _ in range(m)) for _ in range(n + 1))


def product_coefficients(a: Sequence[Nat], c: Matrix, p: Nat) -> Matrix:
    """Column-wise convolution: out[i][j] = sum_s a[s] * c[i-s][j] mod p"""
    lam = len(a) - 1
    n = len(c) - 1
    m = len(c[0])
    out: List[Tuple[Nat, ...]] = []
    for i in range(n + lam + 1):
        row = []
        for j in range(m):
            acc = 0
            for s in range(max(0, i - n), min(lam, i) + 1):
                acc += a[s] * c[i - s][j]
            row.append(acc % p)
        out.append(tuple(row))
    return tuple(out)


def evaluate(coeffs: Sequence[Nat], x: Nat, p: Nat) -> Nat:
    """Horner evaluation of sum_i coeffs[i] * x^i mod p"""
    acc = 0
    for a in reversed(coeffs):
        acc = (acc * x + a) % p
    return acc


def powers(x: Nat, count: int, p: Nat) -> List[Nat]:
    """[1, x, x^2, ...] mod p"""
    out = [1 % p]
    for _ in range(count - 1):
        out.append(out[-1] * x % p)
    return out


def monomials(x: Nat, u: Sequence[Nat], rows: int, p: Nat) -> Matrix:
    """w[i][j] = u_j * x^i mod p, the reduced monomial values fed to the public key"""
    xp = powers(x, rows, p)
    return tuple(tuple(uj * xi % p for uj in u) for xi in xp)


def map_matrix(fn, matrix: Matrix) -> Matrix:
    return tuple(tuple(fn(v) for v in row) for row in matrix)


def flatten(matrix: Matrix) -> List[Nat]:
    return [v for row in matrix for v in row]
