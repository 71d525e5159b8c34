"""Reverse-mode autodiff over float64 numpy arrays.

A Tensor remembers the tensors it was computed from and a closure that pushes
its gradient back to them. backward() walks the graph in reverse topological
order.
"""

from __future__ import annotations

from typing import Callable, Iterable

import numpy as np

from core import NumericalError

BackwardFn = Callable[[np.ndarray], None]


class Tensor:
    __slots__ = ("data", "grad", "requires_grad", "_parents", "_backward", "op")

    def __init__(
        self,
        data: np.ndarray | float,
        *,
        requires_grad: bool = False,
        parents: Iterable[Tensor] = (),
        backward: BackwardFn | None = None,
        op: str = "",
    ) -> None:
        self.data = np.asarray(data, dtype=np.float64)
        self.grad: np.ndarray | None = None
        self.requires_grad = requires_grad
        self._parents = tuple(parents)
        self._backward = backward
        self.op = op

    @property
    def shape(self) -> tuple[int, ...]:
        return self.data.shape

    def __repr__(self) -> str:
        return f"Tensor(shape={self.shape}, op={self.op!r}, requires_grad={self.requires_grad})"

    def accumulate(self, grad: np.ndarray) -> None:
        if not self.requires_grad:
            return
        grad = _unbroadcast(grad, self.data.shape)
        if self.grad is None:
            self.grad = grad.copy()
        else:
            self.grad = self.grad + grad

    def zero_grad(self) -> None:
        self.grad = None

    def backward(self, grad: np.ndarray | None = None) -> None:
        """Accumulate d(self)/d(leaf) into every leaf that requires grad."""
        order: list[Tensor] = []
        seen: set[int] = set()
        stack: list[tuple[Tensor, bool]] = [(self, False)]
        while stack:
            node, expanded = stack.pop()
            if expanded:
                order.append(node)
                continue
            if id(node) in seen:
                continue
            seen.add(id(node))
            stack.append((node, True))
            for parent in node._parents:
                if parent.requires_grad and id(parent) not in seen:
                    stack.append((parent, False))

        self.grad = np.ones_like(self.data) if grad is None else np.asarray(grad, dtype=np.float64)
        for node in reversed(order):
            if node._backward is not None and node.grad is not None:
                node._backward(node.grad)

    # Arithmetic -------------------------------------------------------------

    def __add__(self, other: Tensor | float) -> Tensor:
        other = as_tensor(other)
        a, b = self, other

        def backward(g: np.ndarray) -> None:
            a.accumulate(g)
            b.accumulate(g)

        return _result(a.data + b.data, (a, b), backward, "add")

    __radd__ = __add__

    def __sub__(self, other: Tensor | float) -> Tensor:
        other = as_tensor(other)
        a, b = self, other

        def backward(g: np.ndarray) -> None:
            a.accumulate(g)
            b.accumulate(-g)

        return _result(a.data - b.data, (a, b), backward, "sub")

    def __rsub__(self, other: Tensor | float) -> Tensor:
        return as_tensor(other) - self

    def __neg__(self) -> Tensor:
        a = self
        return _result(-a.data, (a,), lambda g: a.accumulate(-g), "neg")

    def __mul__(self, other: Tensor | float) -> Tensor:
        other = as_tensor(other)
        a, b = self, other

        def backward(g: np.ndarray) -> None:
            a.accumulate(g * b.data)
            b.accumulate(g * a.data)

        return _result(a.data * b.data, (a, b), backward, "mul")

    __rmul__ = __mul__

    def __matmul__(self, other: Tensor) -> Tensor:
        a, b = self, other

        def backward(g: np.ndarray) -> None:
            a.accumulate(g @ b.data.T)
            b.accumulate(a.data.T @ g)

        return _result(a.data @ b.data, (a, b), backward, "matmul")

    def reshape(self, *shape: int) -> Tensor:
        a = self
        original = a.data.shape
        return _result(a.data.reshape(*shape), (a,), lambda g: a.accumulate(g.reshape(original)), "reshape")

    def sum(self) -> Tensor:
        a = self
        return _result(np.asarray(a.data.sum()), (a,), lambda g: a.accumulate(np.broadcast_to(g, a.data.shape)), "sum")


def as_tensor(value: Tensor | np.ndarray | float) -> Tensor:
    return value if isinstance(value, Tensor) else Tensor(value)


def parameter(data: np.ndarray) -> Tensor:
    """Leaf tensor that collects a gradient."""
    return Tensor(np.array(data, dtype=np.float64, copy=True), requires_grad=True, op="param")


def _result(data: np.ndarray, parents: tuple[Tensor, ...], backward: BackwardFn, op: str) -> Tensor:
    needs_grad = any(p.requires_grad for p in parents)
    return Tensor(data, requires_grad=needs_grad, parents=parents if needs_grad else (),
                  backward=backward if needs_grad else None, op=op)


def _unbroadcast(grad: np.ndarray, shape: tuple[int, ...]) -> np.ndarray:
    while grad.ndim > len(shape):
        grad = grad.sum(axis=0)
    for axis, size in enumerate(shape):
        if size == 1 and grad.shape[axis] != 1:
            grad = grad.sum(axis=axis, keepdims=True)
    return grad


def check_finite(data: np.ndarray, op: str) -> None:
    if not np.all(np.isfinite(data)):
        raise NumericalError(f"non-finite values produced by {op}", operation=op)
