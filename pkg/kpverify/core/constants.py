"""Shared variable names and default caps."""

EPS = "eps"
S = "s"
S_MINUS = "sm"
T = "t"
DS = "ds"  # formal symbol standing for ∂/∂s


# Variable-name builders; indices are 1-based except for the s_i times.
def x_var(i: int) -> str:
    return f"x{i}"


def u_var(i: int, j: int) -> str:
    return f"u{i}{j}" if i < j else f"u{j}{i}"


def q_var(k: int) -> str:
    return f"q{k}"


def s_time(i: int) -> str:
    return f"s{i}"


def w_var(k: int) -> str:
    return f"w{k}"


def h_var(i: int, j: int = None) -> str:
    return f"h{i}" if j is None else f"h{i}{j}"


DEFAULT_SEED = 20240517
RATIONAL_POOL_NUMERATORS = (1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13)
RATIONAL_POOL_DENOMINATORS = (1, 2, 3, 4, 5)
DEFAULT_PAIRING_BUDGET = 20_000_000
