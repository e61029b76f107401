# Copyright 2026 The abbe-ndn Authors.
# SPDX-License-Identifier: Apache-2.0

import json
import os
import pathlib

import pytest
from jsonschema import Draft202012Validator
from referencing import Registry, Resource

import abbe_ndn

ROOT = pathlib.Path(os.environ.get("ABBE_SOURCE_DIR", pathlib.Path(__file__).resolve().parents[2]))
SCHEMAS = ROOT / "schemas"


@pytest.fixture(scope="session")
def registry():
    resources = []
    for path in SCHEMAS.glob("*.schema.json"):
        doc = json.loads(path.read_text())
        resources.append((doc["$id"], Resource.from_contents(doc)))
    return Registry().with_resources(resources)


@pytest.fixture(scope="session")
def validator(registry):
    base = "https://abbe-ndn.example/schemas/"

    def make(ref):
        return Draft202012Validator({"$ref": base + ref}, registry=registry)

    return make


def make_config(users, policy, pool=None):
    if pool is None:
        pool = sorted({a for attrs in users.values() for a in attrs} | set(policy["attributes"]))
    return json.dumps({
        "curve": json.loads(abbe_ndn.curve_json()),
        "attribute_pool": pool,
        "users": [{"id": u, "attributes": sorted(a)} for u, a in users.items()],
        "policy": policy,
    })


@pytest.fixture(scope="session")
def team():
    users = {
        "alice": {"eng", "staff"},
        "bob": {"eng"},
        "carol": {"eng", "staff", "ops"},
        "dave": {"staff", "ops"},
    }
    policy = {"attributes": ["eng", "staff"], "revoked": ["carol"]}
    config = make_config(users, policy)
    keys = abbe_ndn.generate_keys(config, seed=b"\x01" * 16)
    return users, policy, config, keys
