"""Independent direct-formula implementations used only as test oracles.

Deliberately kept separate from the package under test: plain floats,
plain dicts, no imports from divmeter.
"""

from __future__ import annotations

import math

GEO_S_REF = 193


def entropy(counts) -> float:
    total = sum(counts)
    assert total > 0
    # + 0.0 normalizes the -0.0 that -sum() yields for one-category input
    return -sum((c / total) * math.log(c / total) for c in counts if c > 0) + 0.0


def evenness(counts, s: int) -> float:
    if s == 1:
        return 1.0
    return min(entropy(counts) / math.log(s), 1.0)


def geo_index(counts, s_ref: int = GEO_S_REF) -> float:
    return min(entropy(counts) / math.log(s_ref), 1.0)


def role_average(per_role_counts: dict, facet: str, s_ref: int = GEO_S_REF):
    """Mean facet value over roles with data; None when no role has data.

    ``per_role_counts`` maps role name to a count list (or None/empty).
    """
    values = []
    for counts in per_role_counts.values():
        if counts and sum(counts) > 0:
            if facet == "gender":
                values.append(evenness(counts, 2))
            elif facet == "business":
                values.append(evenness(counts, 3))
            else:
                values.append(geo_index(counts, s_ref))
    if not values:
        return None
    return sum(values) / len(values)


def headline_indices(matrix: dict, s_ref: int = GEO_S_REF) -> dict:
    """matrix: {facet: {role: counts-or-None}} -> gdi/bdi/geodi/cdi."""
    out = {}
    for facet in ("gender", "business", "geography"):
        out[facet] = role_average(matrix.get(facet, {}), facet, s_ref)
    defined = [v for v in out.values() if v is not None]
    out["cdi"] = sum(defined) / len(defined) if defined else None
    return out


def five_number_summary(values) -> dict:
    data = sorted(values)
    assert data

    def q(p: float) -> float:
        pos = p * (len(data) - 1)
        lo = int(math.floor(pos))
        hi = int(math.ceil(pos))
        frac = pos - lo
        return data[lo] * (1 - frac) + data[hi] * frac

    return {
        "min": data[0],
        "q1": q(0.25),
        "median": q(0.5),
        "q3": q(0.75),
        "max": data[-1],
    }
