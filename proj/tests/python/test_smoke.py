import pytest

import lifeaup

TWO_PATH = """[terrain]
############
#..........#
#.########.#
#A...gg...E#
#....gg....#
############
"""

BLOCK = """[terrain]
......
.gg...
.gg...
......
......
"""


def test_actions():
    assert len(lifeaup.ACTIONS) == 9
    assert lifeaup.ACTIONS[0] == "noop"


def test_block_is_still():
    assert lifeaup.step_life(BLOCK, steps=5) == BLOCK


def test_destroyed_block_scores_four():
    block = [(2, 2), (3, 2), (2, 3), (3, 3)]
    assert lifeaup.side_effect_score(10, 10, block, []) == 4.0
    assert lifeaup.side_effect_score(10, 10, block, block) == 0.0
    empty = BLOCK.replace("g", ".")
    assert lifeaup.score_episode(BLOCK, empty, steps=3) == 4.0


def test_env_walks_the_detour():
    env = lifeaup.Env(TWO_PATH, max_steps=100)
    n, s, e = (lifeaup.ACTIONS.index(a) for a in ("move-n", "move-s", "move-e"))
    total = 0.0
    for a in [n, n] + [e] * 9 + [s, s]:
        reward, done = env.step(a)
        total += reward
    assert done
    assert total == 1.0
    assert env.board.count("g") == 4
    assert len(env.features()) == 25
    assert len(env.observation()) == 25


def test_train_rows_are_reproducible():
    cfg = "task = prune-still-easy\ncondition = plain\nmain_steps = 5000\n"
    a = lifeaup.train(cfg)
    b = lifeaup.train(cfg)
    assert a and a == b
    steps = [r["global_step"] for r in a]
    assert steps == sorted(steps)


def test_config_errors():
    with pytest.raises(lifeaup.ConfigError):
        lifeaup.train("colour = green\n")
    with pytest.raises(ValueError):
        lifeaup.train("", {"gamma": "1.5"})


def test_prop1_and_bench():
    ok, text = lifeaup.verify_prop1(states=5, samples=10)
    assert ok and "status ok" in text
    assert lifeaup.bench(side=64, steps=2) > 0
