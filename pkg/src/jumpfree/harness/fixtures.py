"""The worked committee example on E = {7, 11}, k = 2.

Boss (7, 11) has three committees reporting 4, 7 and 3 and takes 3. Nine
non-isolated terminal vertices, with max coordinates 2, 3, 4, 5, 6, 7, 8, 8, 9,
pass up their min coordinates 2, 1, 1, 5, 4, 4, 7, 3, 2. The diagonal
(7, 7), (11, 11) is isolated. The third committee's second member is (8, 3):
a member with max coordinate 11 cannot sit below the boss in a downward graph.
"""
from __future__ import annotations

BOSS = (7, 11)
E = (7, 11)

TERMINALS = [(2, 2), (1, 3), (4, 1), (5, 5), (4, 6), (7, 4), (8, 7), (8, 3), (9, 2)]
MIDDLE = [(3, 5), (6, 8)]
CUBE = [(7, 7), (7, 11), (11, 7), (11, 11)]

EDGES = [
    ((3, 5), (2, 2)), ((3, 5), (1, 3)), ((3, 5), (4, 1)),
    ((6, 8), (5, 5)), ((6, 8), (4, 6)), ((6, 8), (7, 4)),
    ((7, 11), (3, 5)), ((7, 11), (6, 8)), ((7, 11), (8, 7)), ((7, 11), (8, 3)),
    ((11, 7), (9, 2)), ((11, 7), (8, 7)),
]

# (z, committee reports, index of the selected report); r = 3, shorter
# committees are padded by repeating their last member
TABLE = [
    ((3, 5), [((2, 2), 2), ((1, 3), 1), ((4, 1), 1)], 0),
    ((6, 8), [((5, 5), 5), ((4, 6), 4), ((7, 4), 4)], 1),
    ((7, 11), [((3, 5), 2), ((6, 8), 4), ((8, 7), 7)], 1),
    ((7, 11), [((6, 8), 4), ((8, 7), 7), ((8, 7), 7)], 1),
    ((7, 11), [((6, 8), 4), ((8, 3), 3), ((8, 3), 3)], 1),
    ((11, 7), [((9, 2), 2), ((8, 7), 7), ((8, 7), 7)], 1),
]

EXPECTED_S_HAT = {
    (2, 2): 2, (1, 3): 3, (4, 1): 4, (5, 5): 5, (4, 6): 6, (7, 4): 7,
    (8, 7): 8, (8, 3): 8, (9, 2): 9,
    (3, 5): 2, (6, 8): 4,
    (7, 7): 7, (7, 11): 3, (11, 7): 7, (11, 11): 11,
}


def points():
    return sorted(TERMINALS + MIDDLE + CUBE)


def committee_config(seed: int = 0) -> dict:
    return {
        "version": 1,
        "seed": seed,
        "k": 2,
        "p": 2,
        "r": 3,
        "t": 1,
        "domain": {"kind": "explicit", "points": [list(x) for x in points()]},
        "edgeRule": {
            "name": "explicit",
            "params": {"edges": [[list(x), list(y)] for x, y in EDGES], "strict": True},
        },
        "selectionRule": {
            "name": "table",
            "params": {
                "r": 3,
                "entries": [
                    {"z": list(z), "reports": [[list(y), n] for y, n in reps], "index": i}
                    for z, reps, i in TABLE
                ],
            },
        },
        "rhoRule": {"name": "max"},
        "family": "h_rho",
        "expect": {
            "s_hat": [[list(x), v] for x, v in sorted(EXPECTED_S_HAT.items())],
        },
    }
