"""Exception hierarchy shared across the package."""


class ScenarioError(ValueError):
    """Base class for every scenario-file rejection."""


class SchemaViolation(ScenarioError):
    """A field is missing, has the wrong shape, or the document is malformed."""


class PmfSumViolation(ScenarioError):
    """A probability mass function does not sum to 1 within tolerance."""


class DanglingReference(ScenarioError):
    """A plan names a node or branch that does not exist in the scenario."""


class StructuralViolation(ScenarioError):
    """A plan path does not alternate node/branch or does not end at a sink."""


class DimensionMismatch(ValueError):
    """A state vector does not match the plan's branch/compute-node counts."""


class SearchSpaceExceeded(RuntimeError):
    """An exact computation would visit more states than the configured guard."""
