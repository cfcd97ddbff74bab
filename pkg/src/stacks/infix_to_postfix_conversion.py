"""
Shunting-yard conversion of graph product expressions.
https://en.wikipedia.org/wiki/Shunting-yard_algorithm
"""

from typing import Literal

from src.errors import GraphSyntaxError
from src.stacks.balanced_parentheses import first_unbalanced
from src.stacks.stack import Stack

# Cartesian product is the only binary operator of the graph language.
PRECEDENCES: dict[str, int] = {
    "x": 1,
}
ASSOCIATIVITIES: dict[str, Literal["LR", "RL"]] = {
    "x": "LR",
}


def precedence(token: str) -> int:
    return PRECEDENCES.get(token, -1)


def associativity(token: str) -> Literal["LR", "RL"]:
    return ASSOCIATIVITIES.get(token, "LR")


def infix_to_postfix(expression: list[tuple[str, int]]) -> list[tuple[str, int]]:
    """
    Convert a tokenized infix product expression to postfix order.

    :param expression: (token, position) pairs. A token is an operand such as "C3",
                       the operator "x", or a parenthesis.
    :return: the operands and operators in postfix order, positions kept.

    >>> [t for t, _ in infix_to_postfix([("C3", 0), ("x", 2), ("C5", 3)])]
    ['C3', 'C5', 'x']
    >>> [t for t, _ in infix_to_postfix([("C3", 0), ("x", 2), ("(", 3), ("C4", 4), ("x", 6), ("C5", 7), (")", 9)])]
    ['C3', 'C4', 'C5', 'x', 'x']
    """
    bad = first_unbalanced(expression)
    if bad is not None:
        raise GraphSyntaxError("Mismatched parenthesis", bad)
    stack: Stack[tuple[str, int]] = Stack()
    postfix = []
    for item in expression:
        token = item[0]
        if token not in PRECEDENCES and token not in "()":
            postfix.append(item)
        elif token == "(":
            stack.push(item)
        elif token == ")":
            while not stack.is_empty() and stack.peek()[0] != "(":
                postfix.append(stack.pop())
            stack.pop()
        else:
            while True:
                if stack.is_empty():
                    stack.push(item)
                    break

                token_precedence = precedence(token)
                tos_precedence = precedence(stack.peek()[0])

                if token_precedence > tos_precedence:
                    stack.push(item)
                    break
                if token_precedence < tos_precedence:
                    postfix.append(stack.pop())
                    continue
                if associativity(token) == "RL":
                    stack.push(item)
                    break
                postfix.append(stack.pop())

    while not stack.is_empty():
        postfix.append(stack.pop())
    return postfix


if __name__ == "__main__":
    from doctest import testmod

    testmod()
