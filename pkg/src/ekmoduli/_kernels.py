"""Integer kernels for the exhaustive scans.

Residues mod 1 with a fixed denominator are compared through their
numerators, so every scan runs on int64 arrays.  Each kernel has a numba
version and a pure-numpy version; the numpy path is used when numba is
missing or when ``EKMODULI_DISABLE_NUMBA=1`` is set at import time.
Both paths return identical results.
"""

from __future__ import annotations

import os

import numpy as np

try:
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is an optional extra
    numba = None
    HAVE_NUMBA = False

_DISABLED = os.environ.get("EKMODULI_DISABLE_NUMBA", "").strip().lower() in {"1", "true", "yes", "on"}
BACKEND = "numba" if (HAVE_NUMBA and not _DISABLED) else "numpy"

Q_N = {1: 7, 2: 127}


def sphere_modulus(n: int) -> int:
    """Denominator 2^{4n-1} q_n of the Milnor/Shimada sphere invariant."""
    return 2 ** (4 * n - 1) * Q_N[n]


def quotient_modulus(n: int) -> int:
    """Denominator 2^{4n+1} q_n of the projective-space invariant."""
    return 2 ** (4 * n + 1) * Q_N[n]


# -- numpy implementations ------------------------------------------------------

def _np_quotient_codes(ks, q, modulus):
    ks = np.asarray(ks, dtype=np.int64)
    base = (2 * ks * (ks + 1)) % modulus
    shift = (q * (2 * ks + 1)) % modulus
    plus = (base + shift) % modulus
    minus = (base - shift) % modulus
    lo = np.minimum(plus, minus)
    hi = np.maximum(plus, minus)
    return lo * modulus + hi


def _np_replica_counts(n_loop, q, sphere_mod, quo_mod):
    i = np.arange(n_loop, dtype=np.int64)
    mu = (i * (i + 1)) % sphere_mod
    plus = (2 * i * (i + 1) + q * (2 * i + 1)) % quo_mod
    minus = (quo_mod + 2 * i * (i + 1) - q * (2 * i + 1)) % quo_mod
    countermu = 0
    countermuquo = 0
    for a in range(n_loop):
        tail = slice(a + 1, n_loop)
        same_mu = mu[tail] == mu[a]
        if not same_mu.any():
            countermu += 1
        same_pair = ((plus[tail] == plus[a]) & (minus[tail] == minus[a])) | (
            (plus[tail] == minus[a]) & (minus[tail] == plus[a])
        )
        if not (same_mu & same_pair).any():
            countermuquo += 1
    return countermu, countermuquo


def _np_bucket_violations(bucket, codes):
    bucket = np.asarray(bucket, dtype=np.int64)
    codes = np.asarray(codes, dtype=np.int64)
    _, first, inverse = np.unique(bucket, return_index=True, return_inverse=True)
    reference = codes[first[inverse]]
    return np.nonzero(codes != reference)[0].astype(np.int64)


# -- numba implementations ------------------------------------------------------

if HAVE_NUMBA:

    @numba.njit(cache=False)
    def _nb_quotient_codes(ks, q, modulus):
        out = np.empty(ks.shape[0], dtype=np.int64)
        for idx in range(ks.shape[0]):
            k = ks[idx]
            base = (2 * k * (k + 1)) % modulus
            shift = (q * (2 * k + 1)) % modulus
            plus = (base + shift) % modulus
            minus = (base - shift) % modulus
            if plus < minus:
                out[idx] = plus * modulus + minus
            else:
                out[idx] = minus * modulus + plus
        return out

    @numba.njit(cache=False)
    def _nb_replica_counts(n_loop, q, sphere_mod, quo_mod):
        # per-index values are hoisted out of the double loop; comparisons unchanged
        mu = np.empty(n_loop, dtype=np.int64)
        quoplus = np.empty(n_loop, dtype=np.int64)
        quominus = np.empty(n_loop, dtype=np.int64)
        for i in range(n_loop):
            mu[i] = (i * (i + 1)) % sphere_mod
            quoplus[i] = (2 * i * (i + 1) + q * (2 * i + 1)) % quo_mod
            quominus[i] = (quo_mod + 2 * i * (i + 1) - q * (2 * i + 1)) % quo_mod
        countermu = 0
        countermuquo = 0
        for i in range(n_loop):
            helpcountermu = 0
            helpcountermuquo = 0
            for k in range(i, n_loop):
                if mu[i] == mu[k] and k != i:
                    helpcountermu += 1
                    if quoplus[i] == quoplus[k] and quominus[i] == quominus[k]:
                        helpcountermuquo += 1
                    elif quoplus[i] == quominus[k] and quominus[i] == quoplus[k]:
                        helpcountermuquo += 1
            if helpcountermu == 0:
                countermu += 1
            if helpcountermuquo == 0:
                countermuquo += 1
        return countermu, countermuquo

    @numba.njit(cache=False)
    def _nb_bucket_violations(bucket, codes):
        seen = dict()
        out = np.empty(bucket.shape[0], dtype=np.int64)
        count = 0
        for idx in range(bucket.shape[0]):
            b = bucket[idx]
            if b in seen:
                if codes[seen[b]] != codes[idx]:
                    out[count] = idx
                    count += 1
            else:
                seen[b] = idx
        return out[:count]


_NUMPY = {
    "quotient_codes": _np_quotient_codes,
    "replica_counts": _np_replica_counts,
    "bucket_violations": _np_bucket_violations,
}
_NUMBA = (
    {
        "quotient_codes": _nb_quotient_codes,
        "replica_counts": _nb_replica_counts,
        "bucket_violations": _nb_bucket_violations,
    }
    if HAVE_NUMBA
    else {}
)


def implementations(backend: str) -> dict:
    if backend == "numpy":
        return _NUMPY
    if backend == "numba":
        if not HAVE_NUMBA:
            raise RuntimeError("numba is not installed")
        return _NUMBA
    raise ValueError(f"unknown backend {backend!r}")


_ACTIVE = implementations(BACKEND)


def quotient_codes(ks, n: int) -> np.ndarray:
    """Unordered pair of numerators over 2^{4n+1} q_n, packed as lo*E + hi."""
    ks = np.ascontiguousarray(ks, dtype=np.int64)
    return _ACTIVE["quotient_codes"](ks, Q_N[n], quotient_modulus(n))


def replica_counts(n: int, n_loop: int) -> tuple[int, int]:
    """(countermu, countermuquo) of the quadratic last-occurrence counting loop."""
    cm, cq = _ACTIVE["replica_counts"](n_loop, Q_N[n], sphere_modulus(n), quotient_modulus(n))
    return int(cm), int(cq)


def bucket_violations(bucket, codes) -> np.ndarray:
    """Indices whose code differs from the first code seen in the same bucket."""
    bucket = np.ascontiguousarray(bucket, dtype=np.int64)
    codes = np.ascontiguousarray(codes, dtype=np.int64)
    return np.sort(_ACTIVE["bucket_violations"](bucket, codes))


def sphere_codes(ks, n: int, l: int) -> np.ndarray:
    """Numerators of the bundle invariant over 2^{4n+1} l q_n, i.e. ((2k+l)^2 - l) mod D.

    Vectorised numpy only; switches to Python ints once D^2 could overflow int64.
    """
    modulus = 2 ** (4 * n + 1) * l * Q_N[n]
    if modulus * modulus < 2**62:
        ks = np.asarray(ks, dtype=np.int64)
        t = (2 * ks + l) % modulus
        return (t * t - l) % modulus
    ks = np.asarray(ks, dtype=object)
    t = (2 * ks + l) % modulus
    return (t * t - l) % modulus
