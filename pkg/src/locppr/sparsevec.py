"""Sparse node-indexed vectors: absent ids are exactly zero, stored zeros are pruned."""

import numpy as np


class SparseVector:
    __slots__ = ("entries",)

    def __init__(self, entries=None):
        self.entries = {}
        if entries:
            for i, v in dict(entries).items():
                if v != 0.0:
                    self.entries[int(i)] = float(v)

    @classmethod
    def basis(cls, i, value=1.0):
        return cls({i: value})

    @classmethod
    def from_dense(cls, arr):
        sv = cls()
        for i in np.flatnonzero(arr):
            sv.entries[int(i)] = float(arr[i])
        return sv

    def to_dense(self, n):
        out = np.zeros(n, dtype=np.float64)
        for i, v in self.entries.items():
            out[i] = v
        return out

    def __getitem__(self, i):
        return self.entries.get(i, 0.0)

    def __setitem__(self, i, value):
        if value == 0.0:
            self.entries.pop(i, None)
        else:
            self.entries[int(i)] = float(value)

    def get(self, i, default=0.0):
        return self.entries.get(i, default)

    def items(self):
        return self.entries.items()

    def keys(self):
        return self.entries.keys()

    def copy(self):
        sv = SparseVector()
        sv.entries = dict(self.entries)
        return sv

    def __len__(self):
        return len(self.entries)

    def __contains__(self, i):
        return i in self.entries

    def __bool__(self):
        return bool(self.entries)

    def __eq__(self, other):
        if not isinstance(other, SparseVector):
            return NotImplemented
        return self.entries == other.entries

    def __repr__(self):
        return f"SparseVector({self.entries!r})"

    def l1(self):
        return sum(abs(v) for v in self.entries.values())

    def linf(self):
        return max((abs(v) for v in self.entries.values()), default=0.0)

    def add_scaled(self, other, coef):
        """self += coef * other, pruning exact zeros."""
        for i, v in other.entries.items():
            new = self.entries.get(i, 0.0) + coef * v
            if new == 0.0:
                self.entries.pop(i, None)
            else:
                self.entries[i] = new
        return self
