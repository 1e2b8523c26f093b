"""Rooted binary tree shapes stored as flat index arrays."""

from typing import Iterator, Optional, Sequence

from ford_cherries.errors import InvalidParameterError, UnknownEdgeError

ROOT = 0
NO_CHILD = -1


class TreeShape:
    """An unlabelled rooted binary tree whose root has degree one.

    Vertex 0 is the root; its single child is the top of the binary structure. Every other vertex
    is a leaf or has exactly two ordered children. An edge is named by its child vertex, so the
    edges are exactly the vertices ``1 .. n_vertices - 1``.

    Instances are treated as immutable; operations that grow a tree return a new shape.

    Args:
        parent: Parent index of every vertex (``-1`` for the root).
        left: First child of every vertex, ``NO_CHILD`` for leaves. The root stores its child here.
        right: Second child of every vertex, ``NO_CHILD`` for leaves and the root.

    Raises:
        InvalidParameterError: If the arrays do not describe a valid shape with at least two leaves.
    """

    __slots__ = ("_parent", "_left", "_right", "_sizes")

    def __init__(self, parent: Sequence[int], left: Sequence[int], right: Sequence[int]):
        self._parent = list(parent)
        self._left = list(left)
        self._right = list(right)
        self._sizes: Optional[list[int]] = None
        self._validate()

    @classmethod
    def _trusted(cls, parent: list[int], left: list[int], right: list[int]) -> "TreeShape":
        """Wrap arrays produced by the growth kernels without re-validating them."""
        shape = cls.__new__(cls)
        shape._parent, shape._left, shape._right = parent, left, right
        shape._sizes = None
        return shape

    def _validate(self) -> None:
        size = len(self._parent)
        if not (len(self._left) == len(self._right) == size):
            raise InvalidParameterError("parent, left and right must have the same length")
        if size < 4 or self._parent[ROOT] != NO_CHILD or self._right[ROOT] != NO_CHILD:
            raise InvalidParameterError("a shape needs a degree-1 root and at least two leaves")
        for v in range(1, size):
            l, r = self._left[v], self._right[v]  # noqa: E741
            if (l == NO_CHILD) != (r == NO_CHILD):
                raise InvalidParameterError(f"vertex {v} has exactly one child")
            for child in (l, r):
                if child != NO_CHILD and self._parent[child] != v:
                    raise InvalidParameterError(f"vertex {child} does not point back to parent {v}")
        seen = sum(1 for _ in self._postorder())
        if seen != size:
            raise InvalidParameterError(f"{size - seen} vertices are unreachable from the root")

    @property
    def n_vertices(self) -> int:
        return len(self._parent)

    @property
    def n_leaves(self) -> int:
        return (len(self._parent)) // 2

    def parent(self, v: int) -> int:
        return self._parent[v]

    def children(self, v: int) -> tuple[int, int]:
        return self._left[v], self._right[v]

    def is_leaf(self, v: int) -> bool:
        return v != ROOT and self._left[v] == NO_CHILD

    def edges(self) -> range:
        return range(1, len(self._parent))

    def check_edge(self, edge: int) -> None:
        if not 1 <= edge < len(self._parent):
            raise UnknownEdgeError(f"edge {edge} does not exist in a tree with {self.n_vertices} vertices")

    def pendant_edges(self) -> list[int]:
        return [v for v in self.edges() if self._left[v] == NO_CHILD]

    def internal_edges(self) -> list[int]:
        return [v for v in self.edges() if self._left[v] != NO_CHILD]

    def arrays(self) -> tuple[list[int], list[int], list[int]]:
        """Copies of the parent/left/right arrays."""
        return list(self._parent), list(self._left), list(self._right)

    def _postorder(self) -> Iterator[int]:
        stack = [(ROOT, False)]
        while stack:
            v, expanded = stack.pop()
            if expanded:
                yield v
                continue
            stack.append((v, True))
            for child in (self._right[v], self._left[v]):
                if child != NO_CHILD:
                    stack.append((child, False))

    def subtree_sizes(self) -> list[int]:
        """Number of leaves below every vertex (the root entry holds n_leaves)."""
        if self._sizes is None:
            sizes = [0] * len(self._parent)
            for v in self._postorder():
                l, r = self._left[v], self._right[v]  # noqa: E741
                if l == NO_CHILD:
                    sizes[v] = 1
                else:
                    sizes[v] = sizes[l] + (sizes[r] if r != NO_CHILD else 0)
            self._sizes = sizes
        return self._sizes

    def _render(self, canonical: bool) -> str:
        text: dict[int, str] = {}
        for v in self._postorder():
            l, r = self._left[v], self._right[v]  # noqa: E741
            if v == ROOT:
                continue
            if l == NO_CHILD:
                text[v] = ""
                continue
            first, second = text.pop(l), text.pop(r)
            if canonical and (len(first), first) > (len(second), second):
                first, second = second, first
            text[v] = f"({first},{second})"
        return text[self._left[ROOT]]

    def to_newick(self) -> str:
        """Nested-parenthesis form without labels, e.g. ``"((,),)"`` for the pitchfork."""
        return self._render(canonical=False)

    def canonical(self) -> str:
        """Newick-like string with children sorted, equal for all representations of a shape."""
        return self._render(canonical=True)

    @classmethod
    def from_newick(cls, text: str) -> "TreeShape":
        """Parse the label-free nested-parenthesis form written by :meth:`to_newick`.

        Raises:
            InvalidParameterError: On malformed input or a shape with fewer than two leaves.
        """
        body = text.strip().removesuffix(";")
        parent, left, right = [NO_CHILD], [NO_CHILD], [NO_CHILD]

        def attach(under: int) -> int:
            v = len(parent)
            parent.append(under)
            left.append(NO_CHILD)
            right.append(NO_CHILD)
            if left[under] == NO_CHILD:
                left[under] = v
            elif under != ROOT and right[under] == NO_CHILD:
                right[under] = v
            else:
                raise InvalidParameterError(f"vertex {under} would get more than two children in {text!r}")
            return v

        open_vertices: list[int] = []
        expect_subtree = True
        for position, char in enumerate(body):
            if char == "(":
                if not expect_subtree:
                    raise InvalidParameterError(f"unexpected '(' at position {position} in {text!r}")
                open_vertices.append(attach(open_vertices[-1] if open_vertices else ROOT))
            elif char in ",)":
                if not open_vertices:
                    raise InvalidParameterError(f"unbalanced {char!r} at position {position} in {text!r}")
                if expect_subtree:
                    attach(open_vertices[-1])
                if char == ",":
                    if right[open_vertices[-1]] != NO_CHILD:
                        raise InvalidParameterError(f"vertex with more than two children in {text!r}")
                    expect_subtree = True
                else:
                    closed = open_vertices.pop()
                    if right[closed] == NO_CHILD:
                        raise InvalidParameterError(f"vertex with a single child in {text!r}")
                    expect_subtree = False
            elif not char.isspace():
                raise InvalidParameterError(f"unexpected character {char!r} in shape string {text!r}")
        if open_vertices or expect_subtree:
            raise InvalidParameterError(f"incomplete shape string {text!r}")
        return cls(parent, left, right)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TreeShape):
            return NotImplemented
        return self.n_vertices == other.n_vertices and self.canonical() == other.canonical()

    def __hash__(self) -> int:
        return hash(self.canonical())

    def __repr__(self) -> str:
        return f"TreeShape({self.to_newick()!r})"


def initial_tree() -> TreeShape:
    """The unique two-leaf shape T_2: a cherry hanging below the root edge."""
    return TreeShape._trusted([NO_CHILD, ROOT, 1, 1], [1, 2, NO_CHILD, NO_CHILD], [NO_CHILD, 3, NO_CHILD, NO_CHILD])


def caterpillar(n: int) -> TreeShape:
    """The n-leaf comb, in which every internal vertex has at least one leaf child."""
    if n < 2:
        raise InvalidParameterError(f"a caterpillar needs at least two leaves, got {n}")
    return TreeShape.from_newick("(" * (n - 1) + "," + ")," * (n - 2) + ")")
