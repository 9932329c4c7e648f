"""Exception hierarchy shared across the package."""


class DehnLinkError(Exception):
    pass


class ParseError(DehnLinkError):
    """Input text does not follow the PD grammar."""


class ValidationError(DehnLinkError):
    """Syntactically fine input that does not describe a planar link diagram."""


class NotConnected(DehnLinkError):
    pass


class PreconditionViolated(DehnLinkError):
    pass


class UnsupportedParameter(DehnLinkError):
    pass


class ArcNotOnComponent(DehnLinkError):
    pass


class InternalInconsistency(DehnLinkError):
    """A check that must hold for reduced prime alternating input failed."""
