#!/usr/bin/env python3
"""Generate tests/fixtures/toyconf_report.json from first principles.

The tally below was done by hand from the ToyConf fixture files
(tests/fixtures/toyconf_*.{xml,csv}); the index math comes from the
independent test oracle (tests/oracle.py), not from the package under
test. Run once; the output is committed.

Tally notes:
  keynotes   Grace (woman, academia, US), Henry (man, industry, US)
  organizers Ivy (woman, research_centre, CN), Jack (man, academia, FR),
             Kate (gender via lexicon 0.9 -> woman, academia, US)
  authors    Alice (woman, academia/MIT, US), Bob (man, industry/Acme, US),
             Carol (woman, research_centre/INIA, ES),
             Dan (man, academia/Toulouse, FR),
             Frank (lexicon 0.7 < 0.8 -> unknown gender, unmatched
             affiliation with trailing "China" -> country CN only)
"""

import json
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "tests"))
import oracle  # noqa: E402

# counts in sorted-category order, matching the package's accumulation order
# gender: [man, woman]; business: [academia, industry, research_centre];
# geography: codes sorted alphabetically
TALLY = {
    "keynote": {
        "gender": [1, 1],
        "business": [1, 1, 0],
        "geography": [2],  # US
    },
    "organizer": {
        "gender": [1, 2],
        "business": [2, 0, 1],
        "geography": [1, 1, 1],  # CN, FR, US
    },
    "author": {
        "gender": [2, 2],
        "business": [2, 1, 1],
        "geography": [1, 1, 1, 2],  # CN, ES, FR, US
    },
}

ROLE_ORDER = ["keynote", "organizer", "author"]

COVERAGE = {
    "keynote": {"gender": 2 / 2, "business": 2 / 2, "geography": 2 / 2},
    "organizer": {"gender": 3 / 3, "business": 3 / 3, "geography": 3 / 3},
    "author": {"gender": 4 / 5, "business": 4 / 5, "geography": 5 / 5},
}


def facet_value(counts, facet):
    if facet == "gender":
        return oracle.evenness(counts, 2)
    if facet == "business":
        return oracle.evenness(counts, 3)
    return oracle.geo_index(counts)


def main():
    per_role = {
        role: {facet: facet_value(counts, facet) for facet, counts in facets.items()}
        for role, facets in TALLY.items()
    }
    headline = {}
    for facet in ("gender", "business", "geography"):
        values = [per_role[role][facet] for role in ROLE_ORDER]
        headline[facet] = sum(values) / len(values)
    defined = [headline["gender"], headline["business"], headline["geography"]]
    cdi = sum(defined) / len(defined)

    report = {
        "gdi": headline["gender"],
        "bdi": headline["business"],
        "geodi": headline["geography"],
        "cdi": cdi,
        "per_role": per_role,
        "coverage": COVERAGE,
        "missing_roles": {"gender": [], "business": [], "geography": []},
    }
    out = Path(__file__).resolve().parent.parent / "tests" / "fixtures" / "toyconf_report.json"
    out.write_text(json.dumps(report, sort_keys=True, separators=(",", ":")) + "\n")
    print(f"wrote {out}")


if __name__ == "__main__":
    main()
