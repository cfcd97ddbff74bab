from __future__ import annotations

from typing import Generic, Iterator, Optional, TypeVar

from src.errors import InternalError, ResourceError

T = TypeVar("T")


class StackOverflowError(ResourceError):
    pass


class StackUnderflowError(InternalError):
    pass


class Stack(Generic[T]):
    """LIFO stack used for postfix evaluation of graph expressions and for the
    explicit depth-first walks of the strategy verifier.

    `limit` bounds the depth; None means unbounded.
    """

    def __init__(self, limit: Optional[int] = None):
        self.stack: list[T] = []
        self.limit = limit

    def __bool__(self) -> bool:
        return bool(self.stack)

    def __len__(self) -> int:
        return len(self.stack)

    def __str__(self) -> str:
        return str(self.stack)

    def __iter__(self) -> Iterator[T]:
        """Iterate bottom to top."""
        return iter(self.stack)

    def push(self, data: T) -> None:
        """
        Push an element to the top of the stack.

        >>> S = Stack(2)
        >>> S.push("C3")
        >>> S.push("C5")
        >>> print(S)
        ['C3', 'C5']

        >>> S = Stack(1)
        >>> S.push("K2")
        >>> S.push("K5")
        Traceback (most recent call last):
        ...
        src.stacks.stack.StackOverflowError: stack depth limit 1 reached
        """
        if self.limit is not None and len(self.stack) >= self.limit:
            raise StackOverflowError(
                f"stack depth limit {self.limit} reached", {"depth": len(self.stack)}
            )
        self.stack.append(data)

    def pop(self) -> T:
        """
        Pop an element off of the top of the stack.

        >>> S = Stack()
        >>> S.push(3)
        >>> S.push(5)
        >>> S.pop()
        5

        >>> Stack().pop()
        Traceback (most recent call last):
            ...
        src.stacks.stack.StackUnderflowError: pop from an empty stack
        """
        if not self.stack:
            raise StackUnderflowError("pop from an empty stack")
        return self.stack.pop()

    def peek(self) -> T:
        """
        >>> S = Stack()
        >>> S.push("x")
        >>> S.peek()
        'x'
        """
        if not self.stack:
            raise StackUnderflowError("peek at an empty stack")
        return self.stack[-1]

    def is_empty(self) -> bool:
        return not self.stack

    def is_full(self) -> bool:
        """
        >>> Stack().is_full()
        False
        >>> S = Stack(1)
        >>> S.push(0)
        >>> S.is_full()
        True
        """
        return self.limit is not None and len(self.stack) >= self.limit

    def size(self) -> int:
        return len(self.stack)

    def __contains__(self, item: T) -> bool:
        return item in self.stack


if __name__ == "__main__":
    import doctest

    doctest.testmod()
