from abc import ABC, abstractmethod
from typing import Dict, Hashable, List


class IAlgebra(ABC):
    @abstractmethod
    def hom(self, x: Hashable, y: Hashable) -> List[int]:
        pass

    @abstractmethod
    def multiply(self, u: int, v: int) -> Dict[int, object]:
        pass

    @abstractmethod
    def opposite(self) -> "IAlgebra":
        pass

    @abstractmethod
    def generators(self) -> List[int]:
        pass
