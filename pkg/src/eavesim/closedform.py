"""Closed-form expressions for chained symmetric attacks.

Everything here is analytic and independent of the statevector machinery, so
the two routes can cross-validate each other.  All formulas take the list of
per-attacker disturbances D(1)..D(n), each restricted to [0, 1/2]; values in
(1/2, 1] are legal for the numeric simulator but rejected here, where the
delta/D duality would be two-valued.
"""

from __future__ import annotations

import math
from collections.abc import Sequence

RANGE_TOL = 1e-9


def _xlog2x(t: float) -> float:
    # 0 * log 0 := 0
    return t * math.log2(t) if t > 0.0 else 0.0


def phi(z: float) -> float:
    """(1+z)log2(1+z) + (1-z)log2(1-z) for z in [0, 1]; phi(1) = 2."""
    z = float(z)
    if not -RANGE_TOL <= z <= 1.0 + RANGE_TOL:
        raise ValueError(f"phi argument must lie in [0, 1], got {z!r}")
    z = min(max(z, 0.0), 1.0)
    return _xlog2x(1.0 + z) + _xlog2x(1.0 - z)


def optimal_information(d_b: float) -> float:
    """Maximal attacker information (bits) at receiver error rate ``d_b``.

    This is the four-state-protocol trade-off curve phi(2 sqrt(D(1-D)))/2,
    defined on D in [0, 1/2].
    """
    d_b = float(d_b)
    if not -RANGE_TOL <= d_b <= 0.5 + RANGE_TOL:
        raise ValueError(f"error rate must lie in [0, 1/2], got {d_b!r}")
    d_b = min(max(d_b, 0.0), 0.5)
    return 0.5 * phi(2.0 * math.sqrt(d_b * (1.0 - d_b)))


def alice_bob_information(d_b: float) -> float:
    """Sender-receiver information 1 + D log2 D + (1-D) log2(1-D), in bits."""
    d_b = float(d_b)
    if not -RANGE_TOL <= d_b <= 1.0 + RANGE_TOL:
        raise ValueError(f"error rate must lie in [0, 1], got {d_b!r}")
    d_b = min(max(d_b, 0.0), 1.0)
    return 1.0 + _xlog2x(d_b) + _xlog2x(1.0 - d_b)


def _checked(d: Sequence[float]) -> list[float]:
    out = []
    for j, x in enumerate(d, start=1):
        x = float(x)
        if not 0.0 <= x <= 0.5:
            raise ValueError(
                f"symmetric disturbance D({j}) must lie in [0, 1/2], got {x!r}")
        out.append(x)
    return out


def gains(d: Sequence[float]) -> tuple[float, ...]:
    """Information gain of each attacker in the chain.

    Attacker j keeps her own factor 2 sqrt(D(j)(1-D(j))) but loses a factor
    (1 - 2 D(k)) for every earlier attacker k.
    """
    out = []
    shrink = 1.0
    for x in _checked(d):
        out.append(2.0 * math.sqrt(x * (1.0 - x)) * shrink)
        shrink *= 1.0 - 2.0 * x
    return tuple(out)


def mutual_informations(d: Sequence[float]) -> tuple[float, ...]:
    """Per-attacker information with the sender: phi(gain)/2 for each gain."""
    return tuple(0.5 * phi(g) for g in gains(d))


def bob_error_recursive(d: Sequence[float]) -> float:
    """Receiver error rate built up one attacker at a time.

    Each attacker flips the effective bit independently with probability
    D(n), so the running error rate updates as
    ``e -> e (1 - D(n)) + (1 - e) D(n)``.
    """
    err = 0.0
    for x in _checked(d):
        err = err * (1.0 - x) + (1.0 - err) * x
    return err


def bob_error_substitution(d: Sequence[float]) -> float:
    """Literal recursion whose second branch complements the previous parameter.

    ``E(d1..dn) = E(d1..d(n-1)) (1 - dn) + E(d1..d(n-2), 1-d(n-1)) dn``;
    complementing the last parameter turns the odd-flip probability into the
    even-flip probability, so this agrees with :func:`bob_error_recursive`.
    Kept as a permanent regression oracle for that identity.
    """
    ds = tuple(_checked(d))
    cache: dict[tuple[float, ...], float] = {}

    def rec(prefix: tuple[float, ...]) -> float:
        if not prefix:
            return 0.0
        if len(prefix) == 1:
            return prefix[0]
        if prefix not in cache:
            head, last = prefix[:-1], prefix[-1]
            flipped = head[:-1] + (1.0 - head[-1],)
            cache[prefix] = rec(head) * (1.0 - last) + rec(flipped) * last
        return cache[prefix]

    # complemented parameters may leave [0, 1/2] on purpose; rec() takes
    # them as-is rather than re-validating
    return rec(ds)


def bob_error_product(d: Sequence[float]) -> float:
    """Closed form (1 - prod_j (1 - 2 D(j))) / 2: odd-flip probability."""
    p = 1.0
    for x in _checked(d):
        p *= 1.0 - 2.0 * x
    return 0.5 * (1.0 - p)


def crossover_disturbance(tol: float = 1e-10) -> float:
    """Error rate where the attacker's optimal curve meets the receiver's.

    Root of ``optimal_information(D) - alice_bob_information(D)`` on
    (0, 1/2), located by bisection; analytically 1/2 - sqrt(2)/4.
    """
    def residual(x: float) -> float:
        return optimal_information(x) - alice_bob_information(x)

    lo, hi = 1e-9, 0.5
    if residual(lo) >= 0.0 or residual(hi) <= 0.0:
        raise RuntimeError("crossover bracket lost")  # pragma: no cover
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if residual(mid) < 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
