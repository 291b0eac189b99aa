class DisjointSet:
    """Union by size with path halving over the integers ``0..n-1``."""

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.size = [1] * n
        self.n_sets = n

    @classmethod
    def from_labels(cls, labels) -> "DisjointSet":
        """Start from the partition given by integer ``labels``."""
        labels = list(labels)
        ds = cls(len(labels))
        root = {}
        for x, c in enumerate(labels):
            r = root.setdefault(c, x)
            if r != x:
                ds.parent[x] = r
                ds.size[r] += 1
        ds.n_sets = len(root)
        return ds

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, x: int, y: int) -> bool:
        """Merge the sets of ``x`` and ``y``; return False if already merged."""
        x = self.find(x)
        y = self.find(y)
        if x == y:
            return False
        if self.size[x] < self.size[y]:
            x, y = y, x
        self.parent[y] = x
        self.size[x] += self.size[y]
        self.n_sets -= 1
        return True

    def same(self, x: int, y: int) -> bool:
        return self.find(x) == self.find(y)
