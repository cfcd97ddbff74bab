import unittest

from src.errors import GraphSyntaxError, InternalError, ResourceError
from src.graph_dsl import parse_graph
from src.stacks.balanced_parentheses import first_unbalanced
from src.stacks.stack import Stack, StackOverflowError, StackUnderflowError


class TestStack(unittest.TestCase):

    def test_push_pop_order(self):
        stack = Stack()
        for item in ("C3", "x", "C5"):
            stack.push(item)
        self.assertEqual(stack.size(), 3)
        self.assertEqual(list(stack), ["C3", "x", "C5"])
        self.assertEqual(stack.pop(), "C5")
        self.assertEqual(stack.peek(), "x")
        self.assertIn("C3", stack)

    def test_limit_raises_resource_error(self):
        stack = Stack(limit=1)
        stack.push(0)
        self.assertTrue(stack.is_full())
        with self.assertRaises(StackOverflowError) as ctx:
            stack.push(1)
        self.assertIsInstance(ctx.exception, ResourceError)
        self.assertEqual(ctx.exception.stats, {"depth": 1})

    def test_underflow_is_internal(self):
        with self.assertRaises(StackUnderflowError) as ctx:
            Stack().pop()
        self.assertIsInstance(ctx.exception, InternalError)
        self.assertFalse(Stack())


class TestBalancedParentheses(unittest.TestCase):

    def test_balanced_expression_parses(self):
        self.assertEqual(parse_graph("(C3xC4)xC5").n, 60)

    def test_unbalanced_expression_reports_the_parenthesis(self):
        for text, position in [("((C3xC4)", 0), ("C3)", 2)]:
            with self.subTest(text=text):
                with self.assertRaises(GraphSyntaxError) as ctx:
                    parse_graph(text)
                self.assertEqual(ctx.exception.position, position)

    def test_first_unbalanced_position(self):
        self.assertEqual(first_unbalanced([("(", 0), ("(", 1), ("C3", 2), (")", 4)]), 0)
        self.assertEqual(first_unbalanced([("C3", 0), (")", 2)]), 2)
        self.assertIsNone(first_unbalanced([("(", 0), (")", 1)]))


if __name__ == "__main__":
    unittest.main()
