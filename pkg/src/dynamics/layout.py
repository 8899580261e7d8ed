"""状态分量的命名索引"""

from collections.abc import Iterable, Iterator
from dataclasses import dataclass

from src.exceptions import ContractViolationError

POSITION = "position"
VELOCITY = "velocity"
ACCELERATION = "acceleration"
FORCE = "force"
EXCITATION = "excitation"
TARGET = "target"
INITIAL_POSITION = "initial_position"


@dataclass(frozen=True)
class StateLayout:
    """状态向量各分量的名字，按顺序对应向量下标"""

    names: tuple[str, ...]

    def __post_init__(self):
        names = tuple(self.names)
        if not names:
            raise ContractViolationError("state layout must name at least one component")
        if len(set(names)) != len(names):
            raise ContractViolationError(f"state layout names must be unique: {names}")
        object.__setattr__(self, "names", names)

    @classmethod
    def generic(cls, size: int) -> "StateLayout":
        return cls(tuple(f"x{i}" for i in range(size)))

    @property
    def size(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise ContractViolationError(f"state layout {self.names} has no component '{name}'") from None

    def indices(self, names: Iterable[str]) -> list[int]:
        return [self.index(name) for name in names]

    def __contains__(self, name: object) -> bool:
        return name in self.names

    def __len__(self) -> int:
        return len(self.names)

    def __iter__(self) -> Iterator[str]:
        return iter(self.names)


TWO_OL = StateLayout((POSITION, VELOCITY))
MINJERK = StateLayout((POSITION, VELOCITY, ACCELERATION))
MUSCLE = StateLayout((POSITION, VELOCITY, FORCE, EXCITATION, TARGET))
EXTENDED_MUSCLE = StateLayout((POSITION, VELOCITY, FORCE, EXCITATION, INITIAL_POSITION, TARGET))
