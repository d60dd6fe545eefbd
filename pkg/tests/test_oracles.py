import json

import oracles


def test_frozen_data_is_reproducible(frozen):
    # the references are regenerated from scratch and must match the stored copy
    assert json.loads(json.dumps(oracles.build())) == frozen


def test_oracle_bernoulli_convention():
    assert str(oracles.bernoulli_at(1)) == "-1/2"
    assert str(oracles.bernoulli_at(12)) == "-691/2730"
