"""Exception hierarchy shared by all muselet modules."""


class MuseletError(Exception):
    """Base class for every error raised by this package."""


# ingest

class IngestError(MuseletError):
    pass


class MalformedContainer(IngestError):
    """The .mxl archive is not a valid MusicXML container."""


class MalformedXml(IngestError):
    pass


class UnsupportedFormat(IngestError):
    """File extension or document type (e.g. score-timewise) not handled."""


class EmptyScore(IngestError):
    pass


# represent / corpus

class UnsupportedAlteration(MuseletError):
    """Double sharps and flats have no spelling in the token alphabet."""


class MixedSchemes(MuseletError):
    pass


class EmptyCorpus(MuseletError):
    pass


# lda

class NonFiniteElbo(MuseletError, ArithmeticError):
    pass


class TopicOutOfRange(MuseletError, IndexError):
    pass


# generate

class InvalidWeights(MuseletError, ValueError):
    pass


# classify

class TooFewSamples(MuseletError):
    pass


class TooFewClasses(MuseletError):
    pass


class ClassAbsentFromTrainingFold(MuseletError):
    pass


class EmptyTrainingSet(MuseletError):
    pass


class SolverDidNotConverge(MuseletError, ArithmeticError):
    pass


class DegenerateCovariance(MuseletError, ArithmeticError):
    pass


class SingularWithinScatter(MuseletError, ArithmeticError):
    pass


# cli

class NoIngestibleFiles(MuseletError):
    pass
