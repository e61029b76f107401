# Copyright 2026 The abbe-ndn Authors.
# SPDX-License-Identifier: Apache-2.0

import json
import random

import pytest

import abbe_ndn
from conftest import make_config


def authorized(policy, user, attrs):
    if user in policy["revoked"]:
        return False
    return all(a in attrs for a in policy["attributes"])


def random_instance(rng):
    pool = [f"attr{i}" for i in range(rng.randint(1, 8))]
    users = {f"u{i}": set(rng.sample(pool, rng.randint(1, len(pool)))) for i in range(rng.randint(1, 6))}
    if rng.random() < 0.5:
        required = sorted(users[rng.choice(sorted(users))])
    else:
        required = sorted(rng.sample(pool, rng.randint(1, len(pool))))
    revoked = sorted(u for u in users if rng.random() < 0.2)
    return pool, users, {"attributes": required, "revoked": revoked}


def test_recipients_match_predicate():
    rng = random.Random(20261018)
    for _ in range(6):
        pool, users, policy = random_instance(rng)
        keys = abbe_ndn.generate_keys(make_config(users, policy, pool))
        key, header = keys.encapsulate(json.dumps(policy))
        assert len(key) == 32
        for user, attrs in users.items():
            got = keys.decapsulate(header, user)
            assert abbe_ndn.policy_satisfies(json.dumps(policy), user, sorted(attrs)) == authorized(policy, user, attrs)
            if authorized(policy, user, attrs):
                assert got == key
            else:
                assert got is None


def test_seed_makes_output_deterministic(team):
    _, policy, config, keys = team
    again = abbe_ndn.generate_keys(config, seed=b"\x01" * 16)
    assert again.to_json() == keys.to_json()
    assert abbe_ndn.generate_keys(config, seed=b"\x02" * 16).to_json() != keys.to_json()
    assert keys.encapsulate(json.dumps(policy), seed=b"s") == keys.encapsulate(json.dumps(policy), seed=b"s")


def test_unknown_user_and_bad_policy(team):
    _, policy, _, keys = team
    _, header = keys.encapsulate(json.dumps(policy))
    with pytest.raises(abbe_ndn.AbbeError) as info:
        keys.decapsulate(header, "mallory")
    assert info.value.code == "UnknownUser"
    with pytest.raises(abbe_ndn.AbbeError):
        keys.encapsulate(json.dumps({"attributes": ["eng"], "revoked": ["mallory"]}))
    with pytest.raises(abbe_ndn.AbbeError):
        keys.encapsulate(json.dumps({"attributes": [], "revoked": []}))


def test_messages_reach_only_recipients(team):
    users, policy, _, keys = team
    text = json.dumps(policy)
    env = keys.post_message(text, "alice", b"standup at ten", timestamp=1234)
    for user, attrs in users.items():
        got = keys.receive_message(env, user)
        if authorized(policy, user, attrs):
            assert got == {"room": abbe_ndn.room_id(text), "sender": "alice", "timestamp": 1234,
                           "plaintext": b"standup at ten"}
        else:
            assert got is None


def test_room_id_ignores_order():
    a = {"attributes": ["x", "y"], "revoked": ["p", "q"]}
    b = {"revoked": ["q", "p"], "attributes": ["y", "x"]}
    assert abbe_ndn.room_id(json.dumps(a)) == abbe_ndn.room_id(json.dumps(b))
    assert abbe_ndn.room_id(json.dumps(a)) != abbe_ndn.room_id(json.dumps({"attributes": ["x"], "revoked": []}))
