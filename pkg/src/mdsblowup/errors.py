"""Exception hierarchy.

Input problems derive from ``InputError`` (CLI exit code 2); failed
mathematical premises derive from ``CertificateError`` (exit code 1).
"""


class MdsError(Exception):
    """Base class for every error raised by this package."""


class InputError(MdsError, ValueError):
    """Malformed or out-of-domain input."""


class DegenerateTriangle(InputError):
    pass


class NonCanonicalShape(InputError):
    """Triangle lacks a horizontal base with two positive-slope edges."""


class InvalidInterval(InputError):
    pass


class DegenerateFan(InputError):
    """Rays do not positively span the plane."""


class NotAWps(MdsError):
    """Primitive ray generators do not generate the lattice."""


class FieldMismatch(InputError):
    pass


class ZeroPolynomial(InputError):
    pass


class BadPrime(InputError):
    pass


class NonUnimodular(InputError):
    pass


class WrongShape(InputError):
    pass


class ParseError(InputError):
    pass


class CertificateError(MdsError):
    """A computed premise or certificate condition does not hold."""


class CertificateFails(CertificateError):
    pass


class NoValidJ(CertificateError):
    """No split index satisfies both degree inequalities for this prime."""


class PostVerificationFailed(CertificateError):
    pass


class ValidationFailed(CertificateError):
    pass


class PremiseFailed(CertificateError):
    def __init__(self, clause, certificate=None):
        super().__init__(f"premise failed: {clause}")
        self.clause = clause
        self.certificate = certificate
