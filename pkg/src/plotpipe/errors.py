"""Exception and warning types raised by the plotting pipeline."""


class PlotError(Exception):
    """Base class for all pipeline errors."""


class ArgumentError(PlotError, TypeError):
    pass


class LengthMismatchError(ArgumentError, ValueError):
    pass


class InvalidRange(PlotError, ValueError):
    pass


class UnknownColorName(PlotError, ValueError):
    pass


class UnknownSeriestype(PlotError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else "unknown seriestype"


class CyclicDefault(PlotError):
    pass


class NoRecipeFound(PlotError):
    pass


class RecursionLimitExceeded(PlotError):
    def __init__(self, depth, chain):
        self.depth = depth
        self.chain = tuple(chain)
        super().__init__(
            f"recipe recursion exceeded depth {depth}: " + " -> ".join(self.chain)
        )


class EmptyData(PlotError, ValueError):
    pass


class RaggedMatrix(PlotError, ValueError):
    pass


class UnresolvedSpec(PlotError):
    pass


class CanvasTooSmall(PlotError, ValueError):
    pass


class SpecFormatError(PlotError, ValueError):
    pass


class VersionMismatch(SpecFormatError):
    pass


class UnknownAttributeWarning(UserWarning):
    pass


class RecipeReplacedWarning(UserWarning):
    pass


class LayoutWarning(UserWarning):
    pass
