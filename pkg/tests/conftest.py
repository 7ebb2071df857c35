import pytest

from poset_endo import from_cover_list

DIAMOND_COVERS = [(0, 1), (0, 2), (1, 3), (2, 3)]


@pytest.fixture
def diamond():
    return from_cover_list(4, DIAMOND_COVERS)


def rederive_covers(p):
    """Transitive reduction of the full order, recomputed from scratch."""
    up = p.up_set_masks()
    out = []
    for u in range(p.n):
        for v in range(p.n):
            if u == v or not (up[u] >> v) & 1:
                continue
            if any(
                w not in (u, v) and (up[u] >> w) & 1 and (up[w] >> v) & 1
                for w in range(p.n)
            ):
                continue
            out.append((u, v))
    return sorted(out)
