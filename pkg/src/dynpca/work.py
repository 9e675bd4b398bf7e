"""Work accounting shared by the data-structure modules.

`block_touches` counts pointer-level reads/writes of block records and
`tree_rotations` counts structural steps inside the balanced trees; the
benchmark harness resets and samples these around each operation.
"""


class WorkCounters:
    __slots__ = ("block_touches", "tree_rotations")

    def __init__(self):
        self.block_touches = 0
        self.tree_rotations = 0

    def reset(self):
        self.block_touches = 0
        self.tree_rotations = 0

    def total(self):
        return self.block_touches + self.tree_rotations


COUNTERS = WorkCounters()


def touch(k=1):
    COUNTERS.block_touches += k


def rotate(k=1):
    COUNTERS.tree_rotations += k
