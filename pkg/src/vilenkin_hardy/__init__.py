"""Hardy-type inequalities on constant-order Vilenkin groups and graded p-adic Lie groups."""

from . import _numeric
from .geometry import ShellGeometry, ball_measure, shell_measure, vilenkin_graded_reparam, weighted_shell_measure

__version__ = "0.1.0"
