"""Ordered, named parameter arrays constituting one model's trainable state."""

from __future__ import annotations

from typing import Callable, Iterable, Iterator, Mapping

import numpy as np

from core import LayoutMismatch

Layout = tuple[tuple[str, tuple[int, ...]], ...]


class ParamSet:
    """Named float64 arrays in a fixed order.

    Construction copies its inputs and the accessors hand out read-only views,
    so a ParamSet never aliases another one or the arrays it was built from.
    """

    __slots__ = ("_arrays",)

    def __init__(self, items: Iterable[tuple[str, np.ndarray]] | Mapping[str, np.ndarray]) -> None:
        pairs = items.items() if isinstance(items, Mapping) else items
        arrays: dict[str, np.ndarray] = {}
        for name, value in pairs:
            if name in arrays:
                raise LayoutMismatch(f"duplicate parameter name '{name}'")
            array = np.array(value, dtype=np.float64, copy=True)
            array.setflags(write=False)
            arrays[name] = array
        self._arrays = arrays

    def __len__(self) -> int:
        return len(self._arrays)

    def __iter__(self) -> Iterator[str]:
        return iter(self._arrays)

    def __contains__(self, name: object) -> bool:
        return name in self._arrays

    def __getitem__(self, name: str) -> np.ndarray:
        return self._arrays[name]

    def __repr__(self) -> str:
        return f"ParamSet({len(self)} tensors, {self.num_parameters} parameters)"

    def names(self) -> list[str]:
        return list(self._arrays)

    def items(self) -> Iterator[tuple[str, np.ndarray]]:
        return iter(self._arrays.items())

    @property
    def num_parameters(self) -> int:
        return int(sum(a.size for a in self._arrays.values()))

    def layout(self) -> Layout:
        return tuple((name, tuple(a.shape)) for name, a in self._arrays.items())

    def copy(self) -> ParamSet:
        return ParamSet(self._arrays)

    def check_layout(self, other: ParamSet, operation: str | None = None) -> None:
        if self.layout() != other.layout():
            raise LayoutMismatch("parameter layouts differ", operation=operation)

    def map(self, fn: Callable[[np.ndarray], np.ndarray]) -> ParamSet:
        return ParamSet((name, fn(a)) for name, a in self._arrays.items())

    def replace(self, **updates: np.ndarray) -> ParamSet:
        """Copy with some arrays swapped; shapes must be preserved."""
        out = dict(self._arrays)
        for name, value in updates.items():
            if name not in out or np.shape(value) != out[name].shape:
                raise LayoutMismatch(f"cannot replace '{name}' with shape {np.shape(value)}")
            out[name] = value
        return ParamSet(out)

    def flatten(self) -> np.ndarray:
        if not self._arrays:
            return np.zeros(0, dtype=np.float64)
        return np.concatenate([a.ravel() for a in self._arrays.values()])

    @classmethod
    def from_flat(cls, layout: Layout, flat: np.ndarray) -> ParamSet:
        total = sum(int(np.prod(shape)) for _, shape in layout)
        if flat.size != total:
            raise LayoutMismatch(f"flat vector has {flat.size} values, layout needs {total}")
        out: list[tuple[str, np.ndarray]] = []
        offset = 0
        for name, shape in layout:
            size = int(np.prod(shape))
            out.append((name, flat[offset : offset + size].reshape(shape)))
            offset += size
        return cls(out)

    def bit_equal(self, other: ParamSet) -> bool:
        if self.layout() != other.layout():
            return False
        return all(a.tobytes() == other[name].tobytes() for name, a in self._arrays.items())

    def allclose(self, other: ParamSet, *, rtol: float = 1e-12, atol: float = 0.0) -> bool:
        if self.layout() != other.layout():
            return False
        return all(np.allclose(a, other[name], rtol=rtol, atol=atol) for name, a in self._arrays.items())
