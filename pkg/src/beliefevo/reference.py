"""Worked inputs and published values used by ``reproduce`` and the tests.

Every published table is stored exactly as printed.  Cells known to be
misprinted are listed in ``ERRATA`` together with the value this package
computes, so reports can flag them instead of hiding them.
"""
from __future__ import annotations

from .core import Frame, MassFunction, ProbabilityMassFunction, mass

ABC = Frame.letters(3)
ABCD = Frame.letters(4)
THETA10 = Frame.indexed(10)

# three-element BPA ranked by recognition result and PIC
EXAMPLE_SMALL = {"A": 0.1, "A+B": 0.2, "B+C": 0.3, "A+B+C": 0.4}

# four-element BPA walked through the evolution network
EXAMPLE_BEN = {
    "A": 0.16, "B": 0.14, "C": 0.01, "D": 0.02,
    "A+B": 0.20, "A+C": 0.09, "A+D": 0.04, "B+C": 0.04, "B+D": 0.02, "C+D": 0.01,
    "A+B+C": 0.10, "A+B+D": 0.03, "A+C+D": 0.03, "B+C+D": 0.03,
    "A+B+C+D": 0.08,
}

# partial-DRC worked chain: start mass and the two intermediate results
CHAIN_START = {"A+B": 0.3, "B+C": 0.1, "A+B+C": 0.6}
CHAIN_AFTER_PAIRS = {"A+B": 0.5, "A+C": 0.2, "B+C": 0.3}
CHAIN_AFTER_SINGLETONS = {"A": 0.35, "B": 0.4, "C": 0.25}

CONFLICT_PAIR = ((0.9, 0.09, 0.01), (0.01, 0.14, 0.85))
SAME_PAIR = ((0.5, 0.25, 0.25), (0.5, 0.25, 0.25))

TABLE7_INPUTS = (
    (0.30, 0.60, 0.09, 0.01),
    (0.30, 0.01, 0.01, 0.68),
    (0.02, 0.02, 0.30, 0.66),
    (0.20, 0.10, 0.70, 0.00),
    (0.02, 0.80, 0.08, 0.10),
    (0.60, 0.30, 0.05, 0.05),
    (0.90, 0.50, 0.50, 0.35),  # sums to 2.25 as printed
    (0.30, 0.30, 0.40, 0.00),
)

SWEEP_METHODS = ("FCP", "BetP", "CuzzP", "PnPl")
SWEEP_SIZES = tuple(range(1, 11))


def example_small() -> MassFunction:
    return mass(ABC, EXAMPLE_SMALL)


def example_ben() -> MassFunction:
    return mass(ABCD, EXAMPLE_BEN)


def sweep_mass(size: int) -> MassFunction:
    """Ten-element BPA whose 0.7 block ``A = {t1..t_size}`` grows with ``size``."""
    if not 1 <= size <= 10:
        raise ValueError(f"size must lie in 1..10, got {size}")
    fr = THETA10
    block = (1 << size) - 1
    acc = {fr.mask(["t3", "t4", "t5"]): 0.15, fr.mask("t6"): 0.05}
    acc[fr.full] = acc.get(fr.full, 0.0) + 0.1
    acc[block] = acc.get(block, 0.0) + 0.7
    return MassFunction(fr, acc)


def pmf3(values) -> ProbabilityMassFunction:
    return ProbabilityMassFunction(ABC, values)


# ---- published values ----

TABLE2 = {
    # method: (P(A), P(B), P(C), PIC)
    "CuzzP": (0.3455, 0.3681, 0.2864, 0.0050),
    "PnPl": (0.3043, 0.3913, 0.3043, 0.0067),
    "BetP": (0.3333, 0.3833, 0.2834, 0.0068),
    "DSmP": (0.3591, 0.3659, 0.2750, 0.0073),
    "PraPl": (0.3739, 0.3522, 0.2739, 0.0077),
    "FCP": (0.2951, 0.4688, 0.2361, 0.0387),
}
# the DSmP row is labelled eps = 0.1 but is reproduced exactly by eps = 0.5
TABLE2_DSMP_EPS = 0.5

TABLE3_COLUMNS = ("P(A)", "P(B)", "P(C)", "P(D)", "PIC", "PIC'", "d", "d'")
TABLE3 = {
    "PnPl": (0.3614, 0.3168, 0.1931, 0.1287, 0.0526, 1.0000, 0.2504, 0.1204),
    "CuzzP": (0.3860, 0.3382, 0.1607, 0.1151, 0.0790, 0.8974, 0.2465, 0.0087),
    "BetP": (0.3983, 0.3433, 0.1533, 0.1050, 0.0926, 0.8446, 0.2462, 0.0000),
    "PraPl": (0.4021, 0.3523, 0.1394, 0.1062, 0.1007, 0.8131, 0.2464, 0.1792),
    "DSmP_0": (0.5176, 0.4051, 0.0303, 0.0470, 0.3100, 0.0000, 0.0163, 1.0000),
    "DSmP_0.001": (0.5162, 0.4043, 0.0319, 0.0477, 0.3058, 0.0163, 0.2801, 0.9798),
    "FCP": (0.4787, 0.3702, 0.0985, 0.0526, 0.2039, 0.4122, 0.2590, 0.3699),
}
TABLE3_METHODS = tuple(TABLE3)

TABLE4_CORRELATION = {
    "FCP": (0.9714, 0.6967, 0.5853, 0.5127, 0.4639, 0.4460, 0.4103, 0.3768, 0.3456, 0.3172),
    "BetP": (0.9723, 0.6976, 0.5903, 0.5256, 0.4808, 0.4625, 0.4355, 0.4129, 0.3938, 0.3772),
    "CuzzP": (0.9712, 0.6807, 0.5864, 0.5239, 0.4793, 0.4608, 0.4333, 0.4102, 0.3903, 0.3731),
    "PnPl": (0.8920, 0.6831, 0.5870, 0.5234, 0.4783, 0.4602, 0.4326, 0.4092, 0.3891, 0.3717),
}
TABLE5_PIC = {
    "FCP": (0.6365, 0.4031, 0.3622, 0.3386, 0.2824, 0.2689, 0.2338, 0.2185, 0.2191, 0.2305),
    "BetP": (0.5011, 0.3073, 0.2451, 0.2066, 0.1801, 0.1609, 0.1143, 0.0753, 0.0419, 0.0127),
    "CuzzP": (0.4891, 0.1372, 0.1511, 0.1467, 0.1338, 0.1291, 0.0951, 0.0631, 0.0330, 0.0047),
    "PnPl": (0.1336, 0.1469, 0.1657, 0.1639, 0.1526, 0.1251, 0.0913, 0.0595, 0.0296, 0.0013),
}

PAIR_FCPT_PCR = {"conflict": (0.5046, 0.0531, 0.4423), "same": (0.5658, 0.2171, 0.2171)}
PAIR_DRC = {"conflict": (0.2990, 0.4186, 0.2824), "same": (0.6667, 0.1667, 0.1667)}

ABLATION_METHODS = ("FCP", "DSmP_0", "BetP", "PnPl", "CuzzP")
TABLE6_ABLATION = {
    # method: (P^1 from the conflicting pair, P^2 from the identical pair)
    "FCP": ((0.5046, 0.0531, 0.4423), (0.5658, 0.2171, 0.2171)),
    "DSmP_0": ((0.2990, 0.4186, 0.2824), (0.6667, 0.1667, 0.1667)),
    "BetP": ((0.4550, 0.1550, 0.4300), (0.5000, 0.2500, 0.2500)),
    "PnPl": ((0.4574, 0.1104, 0.4323), (0.4574, 0.1104, 0.4323)),
    "CuzzP": ((0.4550, 0.1550, 0.4300), (0.4615, 0.2692, 0.2692)),
}

TABLE7 = {
    "Murphy": (0.7685, 0.1661, 0.0207, 0.0447),
    "FCPT-PCR": (0.4110, 0.2659, 0.1430, 0.1802),
}

TRAJECTORY_LIMIT = 0.7016  # p(A) for {0.5, 0.25, 0.25}
TRAJECTORY_P_GRID = tuple(round(0.34 + 0.01 * i, 2) for i in range(67))
TRAJECTORY_STEPS = 15

TABLE8_KS = (2, 5, 10)
TABLE8 = {
    # accuracy in percent for k = 2, 5, 10
    "iris": {
        "Murphy": (95.13, 95.27, 95.30),
        "DRC": (95.21, 95.33, 95.33),
        "FCPT-PCR": (95.74, 95.83, 95.89),
    },
    "seeds": {
        "Murphy": (88.84, 89.02, 89.06),
        "DRC": (90.37, 90.38, 90.33),
        "FCPT-PCR": (92.79, 93.09, 93.20),
    },
}

# (table, row, column) -> (printed, computed, note)
ERRATA = {
    ("table3", "DSmP_0", "d"): (0.0163, 0.2808, "printed value belongs to the PIC' column of the next row"),
    ("table3", "PraPl", "d'"): (0.1792, 0.0085, "inconsistent with the printed d column"),
    ("table3", "PnPl", "d'"): (0.1204, 0.1222, "min-max of the printed d column gives neither value"),
    ("table3", "CuzzP", "d'"): (0.0087, 0.0098, "min-max of the printed d column gives neither value"),
    ("table3", "DSmP_0.001", "d'"): (0.9798, 0.9773, "min-max of the printed d column gives neither value"),
    ("table4", "FCP", "3"): (0.5853, 0.5835, "digits transposed"),
    ("table6", "BetP", "P1(B)"): (0.1550, 0.1150, "printed column sums to 1.04"),
    ("table6", "CuzzP", "P1(B)"): (0.1550, 0.1150, "printed column sums to 1.04"),
    ("table6", "DSmP_0", "P1"): (None, None, "printed column repeats the DRC result"),
    ("table6", "DSmP_0", "P2"): (None, None, "printed column repeats the DRC result"),
    ("table6", "PnPl", "P2"): (None, None, "printed column repeats P1; computed value is printed under CuzzP"),
    ("table6", "CuzzP", "P2"): (None, None, "computed value is {0.5, 0.25, 0.25}"),
    ("table7", "*", "*"): (None, None, "printed inputs (P7 sums to 2.25) cannot produce the printed outputs"),
}
