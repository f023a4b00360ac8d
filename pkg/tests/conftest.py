import subprocess
import sys
from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parent.parent


def _ensure_compiled_walker() -> None:
    """Best-effort in-place build of the compiled walker.

    The suite passes without it, but the exhaustive n=6 keeper check is
    only tractable with the extension, so try to build it once.
    """
    try:
        import knightspies._molewalk  # noqa: F401

        return
    except ImportError:
        pass
    try:
        subprocess.run(
            [sys.executable, "setup.py", "build_ext", "--inplace"],
            cwd=ROOT,
            capture_output=True,
            timeout=300,
            check=False,
        )
    except Exception:
        pass


_ensure_compiled_walker()


from knightspies.core import GameParams, room_from_spy_seats  # noqa: E402
from knightspies.secretkeepers import KnavishSpies  # noqa: E402


@pytest.fixture(scope="session")
def worked_21_room():
    """21-seat room reconstructed from the published spider walkthrough.

    Spies sit at {1,2,7,10,11,12,13,17,18,21}; all spies lie except seat
    17, who answers honestly when asked about seat 15.  The deterministic
    spider replay of this room asks 29 questions with one rejected
    knight.
    """
    params = GameParams(n=21, max_spies=10)
    room = room_from_spy_seats(params, {1, 2, 7, 10, 11, 12, 13, 17, 18, 21})
    behavior = KnavishSpies(honest_pairs=frozenset({(17, 15)}))
    return room, behavior


@pytest.fixture(scope="session")
def worked_21_room_pure():
    """All-liars variant of the 21-seat walkthrough (seat 17 a knight).

    Under pure lying the transcript of the candidate hunt is identical,
    and the walkthrough's step path (with its two visits to height 1 from
    above, at times 7 and 11) becomes exact.
    """
    params = GameParams(n=21, max_spies=10)
    return room_from_spy_seats(params, {1, 2, 7, 10, 11, 12, 13, 18, 21})


@pytest.fixture(scope="session")
def worked_11_room():
    """11-seat room matching the published modified-spider walkthrough:
    spies {1,2,3,6}, all lying; the replay needs the full 15 questions."""
    params = GameParams(n=11, max_spies=5)
    return room_from_spy_seats(params, {1, 2, 3, 6})


CANONICAL_12_SEAT_ORDER = [
    (1, 2), (2, 3), (3, 1), (4, 5),
    (6, 7), (7, 8), (8, 9), (9, 10), (10, 11), (11, 12), (12, 6),
    (6, 2), (7, 3), (8, 1), (9, 5), (10, 4),
]


@pytest.fixture(scope="session")
def canonical_12_order():
    """A 16-question order for the 12-seat, bound-5 keeper game: four
    opening accusations leave components {1,2,3} and {4,5}, a support
    cycle pins seats 6..12, and the last five questions squeeze the
    components dry.  Ends in the unique spy set {2,3,5}."""
    return list(CANONICAL_12_SEAT_ORDER)
