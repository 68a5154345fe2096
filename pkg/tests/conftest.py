import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from biperc import backend
from biperc.graphs import BipartiteGraph, gen_kdd, gen_kdn, gen_matching, gen_star, make_graph


def small_battery() -> list[tuple[str, BipartiteGraph]]:
    """Fixed mixed battery, every graph at most 10 edges."""
    zigzag = make_graph(3, 3, [(0, 0), (0, 1), (1, 1), (1, 2), (2, 2)])
    lopsided = make_graph(2, 3, [(0, 0), (0, 1), (0, 2), (1, 2)])
    return [
        ("K11", gen_matching(1)),
        ("matching3", gen_matching(3)),
        ("star3", gen_star(3)),
        ("star4", gen_star(4)),
        ("K22", gen_kdd(2, 2)),
        ("kdd42", gen_kdd(4, 2)),
        ("kdn42", gen_kdn(4, 2)),
        ("zigzag", zigzag),
        ("lopsided", lopsided),
    ]


@pytest.fixture(scope="session")
def battery():
    return small_battery()


def available_backends() -> list[str]:
    names = ["python"]
    try:
        backend.get_backend("compiled")
        names.append("compiled")
    except ImportError:
        pass
    return names


@pytest.fixture(params=available_backends())
def kernels(request):
    return backend.get_backend(request.param)
