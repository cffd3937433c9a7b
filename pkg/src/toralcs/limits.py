"""Default capacity limits.

Operations that materialize group elements or label sets refuse to run
beyond these sizes instead of approximating.  ``KMATRIX_CAP`` in the
environment overrides the element cap.
"""

import os

from .errors import CapacityExceeded

MAX_DIMENSION = 32
ELEMENT_CAP = 10**5
LABEL_CAP = 10**4
EQUIVALENCE_CAP = 10**4
CYCLOTOMIC_CAP = 10**5
RELATIONS_CAP = 64


def element_cap(cap=None):
    if cap is not None:
        return int(cap)
    env = os.environ.get("KMATRIX_CAP")
    if env:
        return int(env)
    return ELEMENT_CAP


def check(size, cap, what):
    if size > cap:
        raise CapacityExceeded(f"{what} has size {size}, above the cap {cap}")
