import math

import numpy as np
import pytest

from services.environment import inside, reflect_if_needed, wrap_periodic
from tests.builders import agent


@pytest.mark.parametrize("position, expected", [
    ((905.0, 450.0), (5.0, 450.0)),
    ((-1.0, -1.0), (899.0, 899.0)),
    ((450.0, 12.5), (450.0, 12.5)),
    ((900.0, 0.0), (0.0, 0.0)),
])
def test_wrap_periodic(torus, position, expected):
    assert wrap_periodic(position, torus) == pytest.approx(expected)


def test_wrapped_positions_stay_in_half_open_box(torus, rng):
    for x, y in rng.uniform(-5000, 5000, size=(500, 2)):
        wx, wy = wrap_periodic((x, y), torus)
        assert 0 <= wx < torus.width and 0 <= wy < torus.height


def test_inside_is_closed(walls):
    assert inside(0.0, 900.0, walls)
    assert not inside(-1e-9, 10.0, walls)


def test_move_inside_is_left_alone(walls):
    previous = agent(100.0, 100.0)
    proposed = agent(101.0, 100.0, psi=0.2)
    assert reflect_if_needed(previous, proposed, walls) == proposed


def test_wall_ahead_turns_left_first(walls):
    previous = agent(899.5, 450.0, psi=0.0)
    proposed = agent(900.5, 450.0, psi=0.05)
    reflected = reflect_if_needed(previous, proposed, walls)
    assert reflected.psi == pytest.approx(math.pi / 2)
    assert reflected.x == pytest.approx(899.5)
    assert reflected.y == pytest.approx(451.0)


def test_corner_turns_around(walls):
    previous = agent(899.5, 899.5, psi=math.pi / 4)
    proposed = agent(899.5 + math.sqrt(0.5), 899.5 + math.sqrt(0.5), psi=math.pi / 4)
    reflected = reflect_if_needed(previous, proposed, walls)
    assert reflected.psi == pytest.approx(5 * math.pi / 4)
    assert inside(reflected.x, reflected.y, walls)


def test_random_choice_uses_both_turns(walls):
    rng = np.random.default_rng(3)
    previous = agent(899.5, 450.0, psi=0.0)
    proposed = agent(900.5, 450.0, psi=0.0)
    turns = {
        round(reflect_if_needed(previous, proposed, walls, rng=rng).psi, 6) for _ in range(50)
    }
    assert turns == {round(math.pi / 2, 6), round(3 * math.pi / 2, 6)}


def test_step_longer_than_arena_is_clamped(walls):
    previous = agent(450.0, 450.0)
    proposed = agent(2450.0, 450.0, v=2000.0)
    reflected = reflect_if_needed(previous, proposed, walls)
    assert inside(reflected.x, reflected.y, walls)
