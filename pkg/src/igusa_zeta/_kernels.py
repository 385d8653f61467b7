"""Congruence-counting kernels.

Counting solutions of f(x) = 0 mod pi^j over (O/pi^j)^n is the one hot loop
in the package (everything else is small exact algebra).  Two backends
implement the same array-level contract:

* numba: @njit odometer loops, used by default when numba imports;
* numpy: chunked vectorized evaluation, always available.

Selection: the environment variable IGUSA_ZETA_BACKEND ("numba", "numpy" or
"auto"), overridable at runtime with :func:`set_backend`.  Counts from the
two backends are exact integers and must agree bit for bit; the benchmark in
benchmarks/bench_oracle.py compares their speed.

Array contract: ``exps`` is a (k, n) int64 matrix of exponent rows, one per
term.  Characteristic 0 passes coefficients mod p^j as a (k,) int64 vector;
characteristic p passes a (k, j) int64 matrix of pi-adic digit rows.  The
optional residue mask is a flat uint8 array over F_p^n (row-major, first
coordinate most significant) restricting points by their reduction.
"""

from __future__ import annotations

import os

import numpy as np

try:
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None
    HAVE_NUMBA = False

_CHUNK = 1 << 20
_forced_backend = None


def set_backend(name):
    """Force "numba" or "numpy", or None to return to the env/auto choice."""
    global _forced_backend
    if name not in (None, "numba", "numpy"):
        raise ValueError(f"unknown backend {name!r}")
    if name == "numba" and not HAVE_NUMBA:
        raise RuntimeError("numba is not importable")
    _forced_backend = name


def active_backend() -> str:
    if _forced_backend is not None:
        return _forced_backend
    env = os.environ.get("IGUSA_ZETA_BACKEND", "auto").lower()
    if env == "numpy":
        return "numpy"
    if env == "numba":
        if not HAVE_NUMBA:
            raise RuntimeError("IGUSA_ZETA_BACKEND=numba but numba is not importable")
        return "numba"
    return "numba" if HAVE_NUMBA else "numpy"


_EMPTY_MASK = np.zeros(0, dtype=np.uint8)


def count_char0(exps, coeffs, p: int, j: int, mask=None) -> int:
    """Count x in (Z/p^j)^n with sum of terms = 0 mod p^j (mask-restricted)."""
    exps = np.ascontiguousarray(exps, dtype=np.int64)
    modulus = p**j
    coeffs = np.ascontiguousarray(np.asarray(coeffs) % modulus, dtype=np.int64)
    use_mask = mask is not None
    m = np.ascontiguousarray(mask, dtype=np.uint8) if use_mask else _EMPTY_MASK
    if active_backend() == "numba":
        return int(_numba_char0(exps, coeffs, modulus, p, m, use_mask))
    return _numpy_char0(exps, coeffs, modulus, p, m if use_mask else None)


def count_charp(exps, coeff_digits, p: int, j: int, mask=None) -> int:
    """Count x in (F_p[pi]/pi^j)^n with sum of terms = 0 (mask-restricted)."""
    exps = np.ascontiguousarray(exps, dtype=np.int64)
    coeff_digits = np.ascontiguousarray(coeff_digits, dtype=np.int64) % p
    use_mask = mask is not None
    m = np.ascontiguousarray(mask, dtype=np.uint8) if use_mask else _EMPTY_MASK
    if active_backend() == "numba":
        return int(_numba_charp(exps, coeff_digits, p, j, m, use_mask))
    return _numpy_charp(exps, coeff_digits, p, j, m if use_mask else None)


# -- numpy backend ------------------------------------------------------------


def _numpy_char0(exps, coeffs, modulus, p, mask) -> int:
    k, n = exps.shape
    total = modulus**n
    strides = [modulus ** (n - 1 - i) for i in range(n)]
    count = 0
    for lo in range(0, total, _CHUNK):
        idx = np.arange(lo, min(lo + _CHUNK, total), dtype=np.int64)
        coords = [(idx // strides[i]) % modulus for i in range(n)]
        acc = np.zeros(idx.shape, dtype=np.int64)
        for t in range(k):
            tv = np.full(idx.shape, coeffs[t], dtype=np.int64)
            for i in range(n):
                for _ in range(exps[t, i]):
                    tv = (tv * coords[i]) % modulus
            acc = (acc + tv) % modulus
        good = acc == 0
        if mask is not None:
            flat = np.zeros(idx.shape, dtype=np.int64)
            for i in range(n):
                flat = flat * p + coords[i] % p
            good &= mask[flat] != 0
        count += int(np.count_nonzero(good))
    return count


def _mul_trunc_numpy(a, b, p):
    # truncated convolution of (N, j) digit blocks, mod p
    j = a.shape[1]
    out = np.zeros_like(a)
    for c in range(j):
        s = np.zeros(a.shape[0], dtype=np.int64)
        for i in range(c + 1):
            s += a[:, i] * b[:, c - i]
        out[:, c] = s % p
    return out


def _numpy_charp(exps, coeff_digits, p, j, mask) -> int:
    k, n = exps.shape
    total = p ** (n * j)
    chunk = max(1, _CHUNK >> 3)
    count = 0
    for lo in range(0, total, chunk):
        idx = np.arange(lo, min(lo + chunk, total), dtype=np.int64)
        size = idx.shape[0]
        digits = np.empty((n, size, j), dtype=np.int64)
        for i in range(n):
            for d in range(j):
                digits[i, :, d] = (idx // p ** (i * j + d)) % p
        acc = np.zeros((size, j), dtype=np.int64)
        for t in range(k):
            tv = np.broadcast_to(coeff_digits[t], (size, j)).copy()
            for i in range(n):
                for _ in range(exps[t, i]):
                    tv = _mul_trunc_numpy(tv, digits[i], p)
            acc = (acc + tv) % p
        good = ~acc.any(axis=1)
        if mask is not None:
            flat = np.zeros(size, dtype=np.int64)
            for i in range(n):
                flat = flat * p + digits[i, :, 0]
            good &= mask[flat] != 0
        count += int(np.count_nonzero(good))
    return count


# -- numba backend -------------------------------------------------------------

if HAVE_NUMBA:

    @numba.njit(cache=False)
    def _numba_char0(exps, coeffs, modulus, p, mask, use_mask):
        k, n = exps.shape
        total = 1
        for _ in range(n):
            total *= modulus
        x = np.zeros(n, dtype=np.int64)
        count = 0
        for _ in range(total):
            ok = True
            if use_mask:
                flat = 0
                for i in range(n):
                    flat = flat * p + x[i] % p
                ok = mask[flat] != 0
            if ok:
                acc = 0
                for t in range(k):
                    tv = coeffs[t]
                    for i in range(n):
                        for _e in range(exps[t, i]):
                            tv = (tv * x[i]) % modulus
                    acc = (acc + tv) % modulus
                if acc == 0:
                    count += 1
            i = n - 1
            while i >= 0:
                x[i] += 1
                if x[i] == modulus:
                    x[i] = 0
                    i -= 1
                else:
                    break
        return count

    @numba.njit(cache=False)
    def _numba_charp(exps, coeff_digits, p, j, mask, use_mask):
        k, n = exps.shape
        total = 1
        for _ in range(n * j):
            total *= p
        digits = np.zeros((n, j), dtype=np.int64)
        acc = np.zeros(j, dtype=np.int64)
        tv = np.zeros(j, dtype=np.int64)
        tmp = np.zeros(j, dtype=np.int64)
        count = 0
        for _ in range(total):
            ok = True
            if use_mask:
                flat = 0
                for i in range(n):
                    flat = flat * p + digits[i, 0]
                ok = mask[flat] != 0
            if ok:
                for c in range(j):
                    acc[c] = 0
                for t in range(k):
                    for c in range(j):
                        tv[c] = coeff_digits[t, c]
                    for i in range(n):
                        for _e in range(exps[t, i]):
                            for c in range(j):
                                s = 0
                                for a in range(c + 1):
                                    s += tv[a] * digits[i, c - a]
                                tmp[c] = s % p
                            for c in range(j):
                                tv[c] = tmp[c]
                    for c in range(j):
                        acc[c] = (acc[c] + tv[c]) % p
                zero = True
                for c in range(j):
                    if acc[c] != 0:
                        zero = False
                        break
                if zero:
                    count += 1
            # odometer over the n*j digits, last digit fastest
            pos = n * j - 1
            while pos >= 0:
                i, d = pos // j, pos % j
                digits[i, d] += 1
                if digits[i, d] == p:
                    digits[i, d] = 0
                    pos -= 1
                else:
                    break
        return count

else:  # pragma: no cover - exercised only without numba installed

    def _numba_char0(*args):
        raise RuntimeError("numba backend unavailable")

    def _numba_charp(*args):
        raise RuntimeError("numba backend unavailable")
