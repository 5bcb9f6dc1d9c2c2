"""Exception types raised across the package.

Every error carries the name of the module that raised it so the command
line front end can report provenance.
"""


class TermSwarmError(Exception):
    module = "termswarm"


# pipeline
class PipelineError(TermSwarmError):
    module = "pipeline"


class MissingDirectory(PipelineError):
    pass


class EmptyCorpus(PipelineError):
    pass


class IoFailure(PipelineError):
    def __init__(self, path, reason=""):
        self.path = path
        super().__init__(f"cannot read {path}" + (f": {reason}" if reason else ""))


class TooLong(PipelineError):
    pass


class ContainsStopword(PipelineError):
    pass


class EmptyTerm(PipelineError):
    pass


class NoCandidates(TermSwarmError):
    module = "pipeline"


# features
class FeatureError(TermSwarmError):
    module = "features"


class UnknownTerm(FeatureError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class NoContrastiveCorpora(FeatureError):
    pass


# optimizer
class OptimizerError(TermSwarmError):
    module = "optimizer"


class InvalidConfig(OptimizerError, ValueError):
    pass


class ModelParseError(OptimizerError):
    pass


# scoring
class RankedListParseError(TermSwarmError):
    module = "scoring"


# eval
class EvaluationError(TermSwarmError):
    module = "eval"


class MissingFile(EvaluationError):
    pass


class EmptyGoldStandard(EvaluationError):
    pass


class KTooLarge(EvaluationError):
    def __init__(self, k, available):
        self.k = k
        self.available = available
        super().__init__(f"k={k} exceeds the {available} ranked terms available")
