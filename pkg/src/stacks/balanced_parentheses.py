from typing import Optional

from .stack import Stack


def first_unbalanced(tokens: list[tuple[str, int]]) -> Optional[int]:
    """Return the position of the first parenthesis that has no partner, or None.

    `tokens` are (text, position) pairs; only "(" and ")" are looked at.

    >>> first_unbalanced([("(", 0), ("C3", 1), (")", 3)])
    >>> first_unbalanced([("(", 0), ("(", 1), (")", 2)])
    0
    >>> first_unbalanced([("C3", 0), (")", 2)])
    2
    >>> first_unbalanced([])
    """
    stack: Stack[int] = Stack()
    for text, position in tokens:
        if text == "(":
            stack.push(position)
        elif text == ")":
            if stack.is_empty():
                return position
            stack.pop()
    if stack.is_empty():
        return None
    return next(iter(stack))


if __name__ == "__main__":
    from doctest import testmod

    testmod()
