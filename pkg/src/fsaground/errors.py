"""Exception hierarchy shared across the toolkit."""

from __future__ import annotations


class FsaGroundError(Exception):
    """Base class for all toolkit errors."""


class GuardSyntaxError(FsaGroundError):
    """Raised when a guard or specification string cannot be parsed."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class UnboundAtom(FsaGroundError):
    """A formula atom has no entry in the supplied valuation."""

    def __init__(self, atom: str):
        super().__init__(f"atom {atom!r} is not bound in the valuation")
        self.atom = atom


class InvalidDocument(FsaGroundError):
    """A controller/model/frame document violates a structural invariant."""


class AlreadyHardened(FsaGroundError):
    """The controller already contains uncertainty self-loops."""


class AlphabetMismatch(FsaGroundError):
    """Controller and model alphabets are incompatible."""

    def __init__(self, message: str, atoms: list[str]):
        super().__init__(f"{message}: {', '.join(sorted(atoms))}")
        self.atoms = sorted(atoms)


class MalformedNumbering(FsaGroundError):
    """A step-list completion is unnumbered or non-contiguous."""


class UnparsableStep(FsaGroundError):
    """A step description did not match any grammar rule."""

    def __init__(self, text: str, reason: str):
        super().__init__(f"cannot parse step {text!r}: {reason}")
        self.text = text
        self.reason = reason


class UnsupportedConstruct(FsaGroundError):
    """An action definition uses a construct outside the supported subset."""


class MissingField(FsaGroundError):
    """An action definition lacks a required Action/Precondition/Effect line."""


class UnboundPlaceholder(FsaGroundError):
    """A prompt template placeholder has no binding."""


class DanglingGoto(FsaGroundError):
    """A go-to-step clause targets a step index that does not exist."""


class Stuck(FsaGroundError):
    """No controller transition is enabled for the current observation."""

    def __init__(self, state: str, frame_id):
        super().__init__(f"no transition enabled at state {state!r} on frame {frame_id!r}")
        self.state = state
        self.frame_id = frame_id


class BackendFailure(FsaGroundError):
    """A perception backend could not score a proposition."""

    def __init__(self, message: str, frame_id):
        super().__init__(f"{message} (frame {frame_id!r})")
        self.frame_id = frame_id


class Infeasible(FsaGroundError):
    """No threshold pair satisfies the requested accuracy targets."""
