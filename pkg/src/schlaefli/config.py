"""Numerical thresholds shared across modules."""

from dataclasses import dataclass, replace


@dataclass(frozen=True)
class Tolerances:
    """Thresholds used by guards and by the identity checks.

    The defaults are the values the test-suite is calibrated against. Pass a
    modified copy (``DEFAULT_TOLERANCES.with_(identity_p=1e-12)``) to tighten
    or loosen a single threshold.
    """

    # arccos-style clamping window and angle degeneracy guard
    clamp: float = 1e-12
    degenerate_angle: float = 1e-9
    # smallest admissible A-invariant / sine before derivatives are refused
    min_invariant: float = 1e-12
    # agreement between a_ij read off Lk(v_i) and off Lk(v_j)
    link_consistency: float = 1e-9
    # identity residual ceilings
    identity_p: float = 1e-9
    identity_r: float = 1e-8
    inverse: float = 1e-8
    # refuse to invert beyond this 2-norm condition number
    max_condition: float = 1e12

    def with_(self, **changes):
        return replace(self, **changes)


DEFAULT_TOLERANCES = Tolerances()
