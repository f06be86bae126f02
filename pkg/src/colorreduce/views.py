"""Recursive round views of nodes in colored graphs.

A depth-0 view is a node's own color.  A depth-(r+1) view pairs the node's
depth-r view with the collection of its neighbors' depth-r views: a
duplicate-free set under set delivery, a multiset under multiset delivery.

Views are hash-consed: structurally equal views are the same object, so
equality and hashing are O(1) even for deep views.  The exact canonical
byte encoding is injective and decodable; it is materialized lazily and
meant for desk-scale views (the interned digest serves deep ones).
"""

from __future__ import annotations

from hashlib import blake2b

SET = "set"
MULTISET = "multiset"

_KIND_BYTE = {SET: b"S", MULTISET: b"M"}


class View:
    """Immutable recursive view; construct via View.leaf / View.make."""

    __slots__ = ("kind", "depth", "base_color", "inner", "children",
                 "child_lookup", "child_size", "digest", "_enc")

    _pool: dict = {}

    def __init__(self, *_args, **_kwargs):
        raise TypeError("use View.leaf(...) or View.make(...)")

    @classmethod
    def _intern(cls, kind, depth, base_color, inner, children, digest):
        pool = cls._pool
        found = pool.get(digest)
        if found is not None:
            return found
        self = object.__new__(cls)
        self_set = object.__setattr__
        self_set(self, "kind", kind)
        self_set(self, "depth", depth)
        self_set(self, "base_color", base_color)
        self_set(self, "inner", inner)
        self_set(self, "children", children)
        self_set(self, "child_lookup", frozenset(c for c, _ in children))
        self_set(self, "child_size", sum(cnt for _, cnt in children))
        self_set(self, "digest", digest)
        self_set(self, "_enc", None)
        pool[digest] = self
        return self

    @classmethod
    def leaf(cls, kind, color):
        """Depth-0 view carrying only the node's own color."""
        if kind not in _KIND_BYTE:
            raise ValueError(f"unknown kind {kind!r}")
        if not isinstance(color, int) or color < 1:
            raise ValueError("colors are positive integers")
        h = blake2b(digest_size=16)
        h.update(b"L" + _KIND_BYTE[kind])
        h.update(b"%d" % color)
        return cls._intern(kind, 0, color, None, (), h.digest())

    @classmethod
    def make(cls, kind, inner, children):
        """Depth-(r+1) view from a depth-r inner view and depth-r children.

        `children` is an iterable of View or (View, count) pairs.  Under
        SET kind duplicates collapse; under MULTISET multiplicities add up.
        """
        if kind not in _KIND_BYTE:
            raise ValueError(f"unknown kind {kind!r}")
        if inner.kind != kind:
            raise ValueError("inner view kind mismatch")
        counts = {}
        for entry in children:
            if isinstance(entry, tuple):
                child, cnt = entry
            else:
                child, cnt = entry, 1
            if child.depth != inner.depth:
                raise ValueError("child depth must equal inner depth")
            if child.kind != kind:
                raise ValueError("child view kind mismatch")
            counts[child] = counts.get(child, 0) + cnt
        if kind == SET:
            items = tuple((c, 1) for c in sorted(counts, key=lambda v: v.digest))
        else:
            items = tuple(sorted(counts.items(), key=lambda kv: kv[0].digest))
        h = blake2b(digest_size=16)
        h.update(b"N" + _KIND_BYTE[kind])
        h.update(inner.digest)
        for child, cnt in items:
            h.update(child.digest)
            h.update(b"%d," % cnt)
        return cls._intern(kind, inner.depth + 1, None, inner, items, h.digest())

    # interning makes identity comparison exact
    def __eq__(self, other):
        return self is other

    def __hash__(self):
        return hash(self.digest)

    def __repr__(self):
        if self.depth == 0:
            return f"View({self.base_color})"
        inside = ", ".join(
            repr(c) if n == 1 else f"{c!r}*{n}" for c, n in self.children
        )
        return f"View({self.inner!r}; {{{inside}}})"

    def distinct_children(self):
        return tuple(c for c, _ in self.children)

    def contains_child(self, child) -> bool:
        return child in self.child_lookup

    def child_count(self, child) -> int:
        for c, n in self.children:
            if c is child:
                return n
        return 0


def canonical_encode(view: View) -> bytes:
    """Exact injective encoding; equal bytes iff equal views.

    Children are listed in lexicographic order of their own encodings,
    which gives a total, construction-order-independent serialization.
    """
    cached = view._enc
    if cached is not None:
        return cached
    kb = _KIND_BYTE[view.kind]
    if view.depth == 0:
        enc = kb + b"0(%d)" % view.base_color
    else:
        parts = sorted(canonical_encode(c) for c, _ in view.children)
        if view.kind == SET:
            body = b",".join(parts)
        else:
            by_enc = {canonical_encode(c): n for c, n in view.children}
            body = b",".join(p + b"*%d" % by_enc[p] for p in parts)
        enc = kb + b"%d(" % view.depth + canonical_encode(view.inner) + b";" + body + b")"
    object.__setattr__(view, "_enc", enc)
    return enc


class _Parser:
    def __init__(self, data: bytes):
        self.data = data
        self.pos = 0

    def take(self, token: bytes):
        if not self.data.startswith(token, self.pos):
            raise ValueError(f"bad view encoding at byte {self.pos}")
        self.pos += len(token)

    def read_int(self) -> int:
        start = self.pos
        while self.pos < len(self.data) and self.data[self.pos : self.pos + 1].isdigit():
            self.pos += 1
        if self.pos == start:
            raise ValueError(f"expected integer at byte {start}")
        return int(self.data[start : self.pos])

    def peek(self) -> bytes:
        return self.data[self.pos : self.pos + 1]

    def parse_view(self) -> View:
        kind_byte = self.peek()
        if kind_byte == b"S":
            kind = SET
        elif kind_byte == b"M":
            kind = MULTISET
        else:
            raise ValueError(f"bad kind byte {kind_byte!r} at {self.pos}")
        self.pos += 1
        depth = self.read_int()
        self.take(b"(")
        if depth == 0:
            color = self.read_int()
            self.take(b")")
            return View.leaf(kind, color)
        inner = self.parse_view()
        self.take(b";")
        children = []
        while self.peek() != b")":
            child = self.parse_view()
            count = 1
            if kind == MULTISET:
                self.take(b"*")
                count = self.read_int()
            children.append((child, count))
            if self.peek() == b",":
                self.pos += 1
        self.take(b")")
        view = View.make(kind, inner, children)
        if view.depth != depth:
            raise ValueError("encoded depth does not match structure")
        return view


def canonical_decode(data: bytes) -> View:
    parser = _Parser(data)
    view = parser.parse_view()
    if parser.pos != len(data):
        raise ValueError("trailing bytes after view encoding")
    return view


def extract_all_views(g, r: int, kind) -> list[View]:
    """The depth-r view of every node of g under the given delivery kind."""
    if r < 0:
        raise ValueError("rounds must be >= 0")
    current = [View.leaf(kind, c) for c in g.psi]
    for _ in range(r):
        current = [
            View.make(kind, current[v], (current[u] for u in g.adjacency[v]))
            for v in range(g.n)
        ]
    return current


def extract_view(g, v: int, r: int, kind) -> View:
    """The data node v can gather in r rounds: own (r-1)-view plus the
    collection of the neighbors' (r-1)-views."""
    return extract_all_views(g, r, kind)[v]


def truncate(view: View, r: int) -> View:
    """The r-round view of the same node in the same graph, for r <= depth."""
    if not 0 <= r <= view.depth:
        raise ValueError(f"cannot truncate depth-{view.depth} view to {r}")
    while view.depth > r:
        view = view.inner
    return view


def erase_multiplicities(view: View) -> View:
    """Recursively forget multiplicities, turning a multiset view into the
    set view the same node would have under set delivery."""
    memo = {}

    def walk(v):
        got = memo.get(v)
        if got is not None:
            return got
        if v.depth == 0:
            out = View.leaf(SET, v.base_color)
        else:
            out = View.make(SET, walk(v.inner), (walk(c) for c, _ in v.children))
        memo[v] = out
        return out

    return walk(view)


def view_to_json(view: View):
    """JSON form: depth-0 view as a bare integer; deeper views as
    {"inner": ..., "children": [...]} with children in canonical order.
    Multiset children are [child, count] pairs."""
    if view.depth == 0:
        return view.base_color
    enc_order = sorted(view.children, key=lambda kv: canonical_encode(kv[0]))
    if view.kind == SET:
        children = [view_to_json(c) for c, _ in enc_order]
    else:
        children = [[view_to_json(c), n] for c, n in enc_order]
    return {"inner": view_to_json(view.inner), "children": children}


def view_from_json(data, kind) -> View:
    if isinstance(data, int):
        return View.leaf(kind, data)
    inner = view_from_json(data["inner"], kind)
    children = []
    for entry in data["children"]:
        if kind == MULTISET:
            child, count = entry
            children.append((view_from_json(child, kind), count))
        else:
            children.append(view_from_json(entry, kind))
    return View.make(kind, inner, children)
