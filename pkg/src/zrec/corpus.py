"""Built-in example matrices used by tests, the CLI and ``verify``."""
from .field import QQ
from .recmat import RecMat


def identity(field=QQ):
    return RecMat.identity(field)


def fibonacci(field=QQ):
    """x_i = x_{i-1} + x_{i-2} for all i."""
    return RecMat.periodic([{0: 1, 1: -1, 2: -1}], field)


def two_class(field=QQ):
    """Even rows x_i = x_{i-1} - x_{i-2}; odd rows x_i = 2x_{i-1} - x_{i-2} + x_{i-4}."""
    return RecMat.periodic([{0: 1, 1: -1, 2: 1}, {0: 1, 1: -2, 2: 1, 4: -1}], field)


def pivots(field=QQ):
    """Three-term left tail, identity row 0, then a two-term right tail.

    Shape: a - 2 for a < 0, 0 at a = 0, -1 at a = 1 and a - 1 for a > 1.
    """
    return RecMat.build([{0: 1, 1: 1, 2: 1}], 0, [{0: 1}, {0: 1, 2: 1}],
                        [{0: 1, 1: 1}], field)


def cover(field=QQ):
    """Period 8 matrix with throw heights 1,6,5,5,4,3,5,3 (four balls)."""
    rows = [
        {0: 1, 1: 1},
        {0: 1, 1: 3, 3: -2, 4: -1, 6: 1},
        {0: 1, 1: 2, 2: 5, 4: -3, 5: -1},
        {0: 1, 1: 1, 2: 1, 3: 2, 5: -1},
        {0: 1, 1: 5, 2: 3, 3: 1, 4: 1},
        {0: 1, 1: 1, 2: 2, 3: 1},
        {0: 1, 1: 5, 2: 3, 3: 1, 5: -1},
        {0: 1, 1: 1, 2: 2, 3: 1},
    ]
    return RecMat.periodic(rows, field)


def one_sided_fibonacci(field=QQ):
    """Rows 0 and 1 are x_i = const, later rows are Fibonacci."""
    return RecMat.build([{0: 1}], 0, [{0: 1}, {0: 1}], [{0: 1, 1: -1, 2: -1}], field)


BUILTIN = {
    "id": identity,
    "fib": fibonacci,
    "two-class": two_class,
    "pivots": pivots,
    "cover": cover,
    "fib-one-sided": one_sided_fibonacci,
}

REDUCED_CORPUS = ("id", "fib", "two-class", "pivots", "cover")
