# Copyright 2026 The abbe-ndn Authors.
# SPDX-License-Identifier: Apache-2.0

"""Attribute-based broadcast encryption over BN curves."""

from ._abbe import (
    AbbeError,
    Keys,
    NotAuthorized,
    SchemaViolation,
    curve_json,
    decrypt_object,
    encrypt_object,
    generate_keys,
    policy_satisfies,
    room_id,
)

__all__ = [
    "AbbeError",
    "Keys",
    "NotAuthorized",
    "SchemaViolation",
    "curve_json",
    "decrypt_object",
    "encrypt_object",
    "generate_keys",
    "policy_satisfies",
    "room_id",
]
