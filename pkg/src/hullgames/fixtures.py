"""Small named gamegraphs used by the delay-identity checks and tests."""

from . import engine

# Four positions: the start forks into a terminal and a two-step branch.
# Nim-values: s=2, a=0, b=1, t=0.
FORK_TEXT = """\
s: a b
a:
b: t
t:
"""

# A four-position chain with skip moves; the start has nim-value 0 while
# its delayed-by-one value is 3, so the two are genuinely unrelated.
# Nim-values: s=0, a=2, b=1, t=0.
CHAIN_TEXT = """\
s: a b
a: b t
b: t
t:
"""

FIXTURES = {
    "fork": FORK_TEXT,
    "chain": CHAIN_TEXT,
}


def load(name: str) -> engine.Gamegraph:
    try:
        text = FIXTURES[name]
    except KeyError:
        raise ValueError(
            f"unknown fixture {name!r}; available: {sorted(FIXTURES)}"
        ) from None
    return engine.parse_gamegraph(text)
