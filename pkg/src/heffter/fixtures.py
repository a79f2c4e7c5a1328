"""Reference arrays shipped with the package.

Eleven published example arrays, stored verbatim in the package CSV format
(header "m,n", one line per row, empty fields for empty cells). Each carries
the parameter tuple it instantiates. They anchor the test suite and the
`dump-blocks` CLI verb, and double as CSV round-trip material.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import Grid, HeffterParams, from_csv

_RAW = {}

_RAW["1H24_6x12"] = ("heffter", (6, 12, 8, 4, 1, 24), """\
6,12
1,-3,,,-26,28,31,-33,,,-56,58
59,2,-4,,,-27,29,32,-34,,,-57
-6,8,11,-13,,,-36,38,41,-43,,
,-7,9,12,-14,,,-37,39,42,-44,
,,-16,18,21,-23,,,-46,48,51,-53
-54,,,-17,19,22,-24,,,-47,49,52
""")

_RAW["8H5_5x10"] = ("heffter", (5, 10, 8, 4, 8, 5), """\
5,10
1,-1,,-5,5,1,-1,,-5,5
7,2,-2,,-7,7,2,-2,,-7
-1,1,4,-4,,-1,1,4,-4,
,-2,2,5,-5,,-2,2,5,-5
-7,,-4,4,7,-7,,-4,4,7
""")

_RAW["5H4_5x10"] = ("heffter", (5, 10, 8, 4, 5, 4), """\
5,10
1,-2,,-8,9,3,-4,,-6,7
9,3,-4,,-6,7,1,-2,,-8
-6,7,1,-2,,-8,9,3,-4,
,-8,9,3,-4,,-6,7,1,-2
-4,,-6,7,1,-2,,-8,9,3
""")

_RAW["3H3_9x9"] = ("heffter", (9, 9, 8, 8, 3, 3), """\
9,9
1,-2,-20,21,13,-14,,-7,8
12,5,-6,-24,25,18,-19,,-11
-3,4,9,-10,-15,16,22,-23,
,-7,8,13,-14,-20,21,1,-2
-6,,-11,12,18,-19,-24,25,5
9,-10,,-15,16,22,-23,-3,4
8,13,-14,,-20,21,1,-2,-7
-11,12,18,-19,,-24,25,5,-6
-10,-15,16,22,-23,,-3,4,9
""")

_RAW["16H5_10x10"] = ("heffter", (10, 10, 4, 4, 16, 5), """\
10,10
1,-1,,,,,,,-5,5
5,3,-3,,,,,,,-5
-1,1,1,-1,,,,,,
,-3,3,3,-3,,,,,
,,-1,1,1,-1,,,,
,,,-3,3,3,-3,,,
,,,,-1,1,1,-1,,
,,,,,-3,3,3,-3,
,,,,,,-1,1,5,-5
-5,,,,,,,-3,3,5
""")

# 18x15 array with a 6-row band repeated three times
_RAW["6H20_18x15"] = ("heffter", (18, 15, 10, 12, 6, 20), """\
18,15
1,-1,,-13,-17,,9,21,,25,-29,,-33,37,
,2,-2,,-14,-18,,10,22,,26,-30,,-34,38
-3,,3,-19,,-15,23,,11,-31,,27,39,,-35
-5,5,,17,13,,-9,-21,,-25,29,,33,-37,
,-6,6,,18,14,,-10,-22,,-26,30,,34,-38
7,,-7,15,,19,-23,,-11,31,,-27,-39,,35
1,-1,,-13,-17,,9,21,,25,-29,,-33,37,
,2,-2,,-14,-18,,10,22,,26,-30,,-34,38
-3,,3,-19,,-15,23,,11,-31,,27,39,,-35
-5,5,,17,13,,-9,-21,,-25,29,,33,-37,
,-6,6,,18,14,,-10,-22,,-26,30,,34,-38
7,,-7,15,,19,-23,,-11,31,,-27,-39,,35
1,-1,,-13,-17,,9,21,,25,-29,,-33,37,
,2,-2,,-14,-18,,10,22,,26,-30,,-34,38
-3,,3,-19,,-15,23,,11,-31,,27,39,,-35
-5,5,,17,13,,-9,-21,,-25,29,,33,-37,
,-6,6,,18,14,,-10,-22,,-26,30,,34,-38
7,,-7,15,,19,-23,,-11,31,,-27,-39,,35
""")

# 16x20 array with an 8-row band repeated twice
_RAW["8H5_16x20"] = ("heffter", (16, 20, 10, 8, 8, 5), """\
16,20
1,-1,,,2,-2,,,3,-3,,,4,-4,,,5,-5,,
,6,-6,,,7,-7,,,8,-8,,,10,-10,,,11,-11,
,,12,-12,,,13,-13,,,14,-14,,,15,-15,,,16,-16
-17,,,17,-19,,,19,-20,,,20,-21,,,21,-22,,,22
-1,1,,,-2,2,,,-3,3,,,-4,4,,,-5,5,,
,-6,6,,,-7,7,,,-8,8,,,-10,10,,,-11,11,
,,-12,12,,,-13,13,,,-14,14,,,-15,15,,,-16,16
17,,,-17,19,,,-19,20,,,-20,21,,,-21,22,,,-22
1,-1,,,2,-2,,,3,-3,,,4,-4,,,5,-5,,
,6,-6,,,7,-7,,,8,-8,,,10,-10,,,11,-11,
,,12,-12,,,13,-13,,,14,-14,,,15,-15,,,16,-16
-17,,,17,-19,,,19,-20,,,20,-21,,,21,-22,,,22
-1,1,,,-2,2,,,-3,3,,,-4,4,,,-5,5,,
,-6,6,,,-7,7,,,-8,8,,,-10,10,,,-11,11,
,,-12,12,,,-13,13,,,-14,14,,,-15,15,,,-16,16
17,,,-17,19,,,-19,20,,,-20,21,,,-21,22,,,-22
""")

_RAW["28H4_16x16"] = ("heffter", (16, 16, 14, 14, 28, 4), """\
16,16
1,2,-1,1,-1,-2,1,-1,2,-2,1,-1,2,-2,,
-2,-1,2,-2,1,2,-1,1,-2,2,-1,1,-2,2,,
,,3,4,-3,3,-3,-4,3,-3,4,-4,3,-3,4,-4
,,-4,-3,4,-4,3,4,-3,3,-4,4,-3,3,-4,4
7,-7,,,6,7,-6,6,-6,-7,6,-6,7,-7,6,-6
-7,7,,,-7,-6,7,-7,6,7,-6,6,-7,7,-6,6
8,-8,9,-9,,,8,9,-8,8,-8,-9,8,-8,9,-9
-8,8,-9,9,,,-9,-8,9,-9,8,9,-8,8,-9,9
2,-2,1,-1,2,-2,,,1,2,-1,1,-1,-2,1,-1
-2,2,-1,1,-2,2,,,-2,-1,2,-2,1,2,-1,1
3,-3,4,-4,3,-3,4,-4,,,3,4,-3,3,-3,-4
-3,3,-4,4,-3,3,-4,4,,,-4,-3,4,-4,3,4
-6,-7,6,-6,7,-7,6,-6,7,-7,,,6,7,-6,6
6,7,-6,6,-7,7,-6,6,-7,7,,,-7,-6,7,-7
-8,8,-8,-9,8,-8,9,-9,8,-8,9,-9,,,8,9
9,-9,8,9,-8,8,-9,9,-8,8,-9,9,,,-9,-8
""")

_RAW["10H3_20x12"] = ("heffter", (20, 12, 6, 10, 10, 3), """\
20,12
1,-1,-4,-5,3,6,,,,,,
-2,2,5,4,-3,-6,,,,,,
,,7,-7,-11,-12,10,13,,,,
,,-8,8,12,11,-10,-13,,,,
,,,,1,-1,-4,-5,3,6,,
,,,,-2,2,5,4,-3,-6,,
,,,,,,7,-7,-11,-12,10,13
,,,,,,-8,8,12,11,-10,-13
3,6,,,,,,,1,-1,-4,-5
-3,-6,,,,,,,-2,2,5,4
-11,-12,10,13,,,,,,,7,-7
12,11,-10,-13,,,,,,,-8,8
1,-1,,,-4,-5,,,3,6,,
,7,-7,,,-11,-12,,,10,13,
,,1,-1,,,-4,-5,,,3,6
-7,,,7,-12,,,-11,13,,,10
-2,2,,,5,4,,,-3,-6,,
,-8,8,,,12,11,,,-10,-13,
,,-2,2,,,5,4,,,-3,-6
8,,,-8,11,,,12,-13,,,-10
""")

_RAW["SMA_5x10"] = ("sma", (5, 10, 8, 4, None, None), """\
5,10
1,-2,,-7,8,11,-12,,-17,18
20,3,-4,,-9,10,13,-14,,-19
-1,2,5,-6,,-11,12,15,-16,
,-3,4,7,-8,,-13,14,17,-18
-20,,-5,6,9,-10,,-15,16,19
""")

_RAW["MR_5x10"] = ("mr", (5, 10, 8, 4, None, None), """\
5,10
20,18,,13,27,30,8,,3,37
39,22,16,,11,29,32,6,,1
19,21,24,14,,9,31,34,4,
,17,23,26,12,,7,33,36,2
0,,15,25,28,10,,5,35,38
""")


@dataclass(frozen=True)
class Fixture:
    label: str
    kind: str  # "heffter", "sma" or "mr"
    m: int
    n: int
    s: int
    k: int
    lam: int | None
    t: int | None
    grid: Grid

    @property
    def params(self) -> HeffterParams:
        if self.kind != "heffter":
            raise ValueError(f"{self.label} is a {self.kind} fixture")
        return HeffterParams(self.m, self.n, self.s, self.k, self.lam, self.t)


def _build():
    out = {}
    for label, (kind, (m, n, s, k, lam, t), csv) in _RAW.items():
        out[label] = Fixture(label, kind, m, n, s, k, lam, t, from_csv(csv))
    return out


FIXTURES = _build()


def load(label: str) -> Grid:
    return FIXTURES[label].grid


def all_fixtures():
    return list(FIXTURES.values())
