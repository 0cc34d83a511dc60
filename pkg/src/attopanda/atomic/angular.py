"""Wigner 3j symbols and reduced spherical-tensor matrix elements.

Racah's closed sum evaluated with log-factorials and Kahan-compensated
summation; accurate to better than 1e-10 for j <= 20 without any
big-integer dependency.
"""

from __future__ import annotations

import math

from ..errors import DomainError


def _half_int(x, name: str) -> int:
    """Return round(2x) after checking x is a half-integer."""
    two = 2.0 * x
    r = round(two)
    if abs(two - r) > 1e-9:
        raise DomainError(f"{name} = {x!r} is not a half-integer")
    return int(r)


def _logfac(n: int) -> float:
    return math.lgamma(n + 1)


def wigner_3j(j1, j2, j3, m1, m2, m3) -> float:
    """Wigner 3j symbol (j1 j2 j3; m1 m2 m3) for (half-)integer arguments.

    Returns 0 when triangle or m-sum conditions are violated; raises
    DomainError for non-half-integer input or |m| > j.
    """
    tj = [_half_int(j, f"j{i+1}") for i, j in enumerate((j1, j2, j3))]
    tm = [_half_int(m, f"m{i+1}") for i, m in enumerate((m1, m2, m3))]
    for j, m in zip(tj, tm):
        if j < 0:
            raise DomainError("angular momenta must be nonnegative")
        if abs(m) > j:
            raise DomainError("|m| exceeds j")
        if (j - m) % 2 != 0:
            raise DomainError("m must differ from j by an integer")
    if tm[0] + tm[1] + tm[2] != 0:
        return 0.0
    # triangle conditions; perimeter must be integral
    if (tj[0] + tj[1] + tj[2]) % 2 != 0:
        return 0.0
    if tj[2] > tj[0] + tj[1] or tj[2] < abs(tj[0] - tj[1]):
        return 0.0

    # all factorial arguments below are genuine integers (in units of 2j)
    def f(two_n: int) -> float:
        return _logfac(two_n // 2)

    tj1, tj2, tj3 = tj
    tm1, tm2, tm3 = tm
    log_delta = 0.5 * (
        f(tj1 + tj2 - tj3) + f(tj1 - tj2 + tj3) + f(-tj1 + tj2 + tj3)
        - f(tj1 + tj2 + tj3 + 2)
    )
    log_pref = 0.5 * (
        f(tj1 + tm1) + f(tj1 - tm1) + f(tj2 + tm2) + f(tj2 - tm2)
        + f(tj3 + tm3) + f(tj3 - tm3)
    )
    t_min = max(0, (tj2 - tj3 - tm1) // 2, (tj1 - tj3 + tm2) // 2)
    t_max = min(
        (tj1 + tj2 - tj3) // 2, (tj1 - tm1) // 2, (tj2 + tm2) // 2
    )
    if t_max < t_min:
        return 0.0
    # Kahan summation of alternating terms scaled by the largest exponent
    logs = []
    for t in range(t_min, t_max + 1):
        lt = -(
            _logfac(t)
            + f(tj3 - tj2 + tm1 + 2 * t)
            + f(tj3 - tj1 - tm2 + 2 * t)
            + f(tj1 + tj2 - tj3 - 2 * t)
            + f(tj1 - tm1 - 2 * t)
            + f(tj2 + tm2 - 2 * t)
        )
        logs.append(lt)
    log_max = max(logs)
    total = 0.0
    comp = 0.0
    for t, lt in zip(range(t_min, t_max + 1), logs):
        term = (-1.0) ** t * math.exp(lt - log_max)
        y = term - comp
        s = total + y
        comp = (s - total) - y
        total = s
    phase = (-1.0) ** ((tj1 - tj2 - tm3) // 2)
    return phase * math.exp(log_delta + log_pref + log_max) * total


def reduced_ck(l: int, k: int, lp: int) -> float:
    """<l || C^k || l'> for integer orbital momenta."""
    return (
        (-1.0) ** l
        * math.sqrt((2 * l + 1) * (2 * lp + 1))
        * wigner_3j(l, k, lp, 0, 0, 0)
    )


def reduced_ck_half(j, k: int, jp) -> float:
    """<j || C^k || j'> for half-integer total momenta."""
    return (
        (-1.0) ** (j - 0.5)
        * math.sqrt((2 * j + 1) * (2 * jp + 1))
        * wigner_3j(j, k, jp, -0.5, 0, 0.5)
    )


def wigner_eckart_z(j, m, jp, reduced: float) -> float:
    """m-resolved z matrix element from its reduced element.

    <j m| z |j' m> = (-1)^(j-m) (j 1 j'; -m 0 m) <j || r C^1 || j'>
    """
    if abs(m) > min(j, jp):
        raise DomainError("|m| exceeds min(j, j')")
    return (-1.0) ** (j - m) * wigner_3j(j, 1, jp, -m, 0, m) * reduced


def z_angular_factor(l_f: int, l_i: int, m: int) -> float:
    """<l_f m | cos(theta) | l_i m> built from the C^1 reduced element."""
    return wigner_eckart_z(l_f, m, l_i, reduced_ck(l_f, 1, l_i))
