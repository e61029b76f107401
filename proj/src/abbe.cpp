// Copyright 2026 The abbe-ndn Authors.
// SPDX-License-Identifier: Apache-2.0

#include "abbe/abbe.hpp"

#include <algorithm>

#include "abbe/errors.hpp"
#include "abbe/hash.hpp"

namespace abbe {

bool AttributeUniverse::contains(const std::string& a) const {
  return std::find(attributes.begin(), attributes.end(), a) != attributes.end();
}

const PublicUser* MasterPublicKey::find_user(const std::string& id) const {
  for (const auto& u : users)
    if (u.user_id == id) return &u;
  return nullptr;
}

std::vector<GroupElement> MasterPublicKey::public_elements() const {
  std::vector<GroupElement> out;
  out.push_back(GroupElement::of(z));
  for (const auto& b : beta_powers) out.push_back(GroupElement::of(b));
  for (const auto& u : users) {
    out.push_back(GroupElement::of(u.p));
    out.push_back(GroupElement::of(u.y));
  }
  return out;
}

const SecretUser* MasterSecretKey::find_user(const std::string& id) const {
  for (const auto& u : users)
    if (u.user_id == id) return &u;
  return nullptr;
}

void validate_universe(const AttributeUniverse& universe) {
  if (universe.attributes.empty()) throw Error(ErrorCode::kInvalidArgument, "attribute universe is empty");
  std::set<std::string> seen;
  for (const auto& a : universe.attributes) {
    if (a.empty() || a.size() > kMaxAttributeNameBytes)
      throw Error(ErrorCode::kInvalidArgument, "attribute name must be 1..64 bytes: '" + a + "'");
    if (!seen.insert(a).second) throw Error(ErrorCode::kInvalidArgument, "duplicate attribute '" + a + "'");
  }
}

Scalar attribute_scalar(const Curve& curve, const std::string& name) {
  return Scalar::hash(curve, "abbe-attr", as_bytes(name));
}

namespace {

// 1 / prod_{j != i} (v_j - v_i) for each i.
std::vector<Scalar> lagrange_weights(const std::vector<Scalar>& v, const Curve& c) {
  std::vector<Scalar> out;
  out.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    Scalar d = Scalar::one(c);
    for (std::size_t j = 0; j < v.size(); ++j)
      if (j != i) d = d * (v[j] - v[i]);
    out.push_back(d.inverse());
  }
  return out;
}

void check_same_curve(const Curve& a, const Curve* b) {
  if (b == nullptr || !a.same_as(*b)) throw Error(ErrorCode::kMismatchedCurve, "elements belong to a different curve");
}

}  // namespace

std::pair<MasterPublicKey, MasterSecretKey> setup(const CurvePtr& curve, const AttributeUniverse& universe,
                                                  const std::vector<UserRecord>& registry, Rng& rng) {
  validate_universe(universe);
  const Curve& c = *curve;
  std::set<std::string> ids;
  for (const auto& u : registry) {
    if (u.user_id.empty()) throw Error(ErrorCode::kInvalidArgument, "empty user id");
    if (!ids.insert(u.user_id).second) throw Error(ErrorCode::kDuplicateUser, u.user_id);
    if (u.attributes.empty()) throw Error(ErrorCode::kInvalidArgument, "user '" + u.user_id + "' has no attributes");
    for (const auto& a : u.attributes)
      if (!universe.contains(a)) throw Error(ErrorCode::kUnknownAttribute, a);
  }

  std::vector<Scalar> attr;
  for (const auto& a : universe.attributes) attr.push_back(attribute_scalar(c, a));

  MasterSecretKey msk;
  msk.curve = curve;
  msk.universe = universe;
  msk.alpha = Scalar::random_nonzero(c, rng);
  for (;;) {
    msk.beta = Scalar::random_nonzero(c, rng);
    if (std::none_of(attr.begin(), attr.end(), [&](const Scalar& a) { return (msk.beta + a).is_zero(); })) break;
  }
  msk.gamma = Scalar::random_nonzero(c, rng);

  MasterPublicKey mpk;
  mpk.curve = curve;
  mpk.universe = universe;
  mpk.z = c.gt_pow(msk.alpha);
  Scalar bp = Scalar::one(c);
  for (std::size_t i = 0; i <= universe.attributes.size(); ++i) {
    mpk.beta_powers.push_back(i == 0 ? c.g1() : c.g1() * bp);
    bp = bp * msk.beta;
  }

  std::vector<Scalar> xs;
  for (const auto& u : registry) {
    SecretUser su{u.user_id, u.attributes, Scalar(), Scalar::random_nonzero(c, rng)};
    for (;;) {
      su.x = Scalar::random(c, rng);
      bool clash = (msk.gamma + su.x).is_zero() ||
                   std::any_of(xs.begin(), xs.end(), [&](const Scalar& o) { return o == su.x; });
      if (!clash) break;
    }
    xs.push_back(su.x);
    Scalar inv = (msk.gamma + su.x).inverse();
    mpk.users.push_back({u.user_id, su.x, c.g1() * inv, c.gt_pow(msk.alpha * inv)});
    msk.users.push_back(std::move(su));
  }
  return {std::move(mpk), std::move(msk)};
}

UserPrivateKey keygen(const MasterSecretKey& msk, const UserRecord& user) {
  const Curve& c = *msk.curve;
  const SecretUser* su = msk.find_user(user.user_id);
  if (su == nullptr) throw Error(ErrorCode::kUnknownUser, user.user_id);
  if (user.attributes.empty()) throw Error(ErrorCode::kInvalidArgument, "user has no attributes");
  for (const auto& a : user.attributes)
    if (!msk.universe.contains(a)) throw Error(ErrorCode::kUnknownAttribute, a);

  Scalar t = su->omega * (msk.gamma + su->x).inverse();
  UserPrivateKey key;
  key.user_id = user.user_id;
  key.attributes = user.attributes;
  key.elements.reserve(2 + user.attributes.size());
  key.elements.push_back(c.g2_mul(msk.alpha + t));
  key.elements.push_back(c.g2_mul(su->omega));
  for (const auto& a : user.attributes)
    key.elements.push_back(c.g2_mul(t * (msk.beta + attribute_scalar(c, a)).inverse()));
  return key;
}

std::pair<SessionKey, AbbeHeader> encapsulate(const MasterPublicKey& mpk, const AccessPolicy& policy, Rng& rng) {
  const Curve& c = *mpk.curve;
  if (policy.required_attributes.empty()) throw Error(ErrorCode::kInvalidArgument, "policy requires no attributes");
  for (const auto& a : policy.required_attributes)
    if (!mpk.universe.contains(a)) throw Error(ErrorCode::kUnknownAttribute, a);
  std::vector<const PublicUser*> revoked;
  for (const auto& id : policy.revoked_users) {
    const PublicUser* pu = mpk.find_user(id);
    if (pu == nullptr) throw Error(ErrorCode::kUnknownRevokedUser, id);
    revoked.push_back(pu);
  }
  if (policy.required_attributes.size() + 1 > mpk.beta_powers.size())
    throw Error(ErrorCode::kInvalidArgument, "public key has too few attribute powers");

  Scalar s = Scalar::random_nonzero(c, rng);

  // Coefficients of prod_P (X + a_j), lowest degree first.
  std::vector<Scalar> coeff{Scalar::one(c)};
  for (const auto& a : policy.required_attributes) {
    Scalar aj = attribute_scalar(c, a);
    std::vector<Scalar> next(coeff.size() + 1, Scalar::zero(c));
    for (std::size_t i = 0; i < coeff.size(); ++i) {
      next[i] = next[i] + coeff[i] * aj;
      next[i + 1] = next[i + 1] + coeff[i];
    }
    coeff = std::move(next);
  }
  G1 c_attr = G1::identity(c);
  for (std::size_t i = 0; i < coeff.size(); ++i) c_attr = c_attr + mpk.beta_powers[i] * (s * coeff[i]);

  AbbeHeader h;
  h.policy = policy;
  G1 c0 = c.g1() * s;
  std::vector<G1> cv;
  GT kappa;
  G1 t;
  if (revoked.empty()) {
    t = c0;
    kappa = mpk.z.pow(s);
  } else {
    std::vector<Scalar> x;
    for (const auto* pu : revoked) x.push_back(pu->x);
    auto d = lagrange_weights(x, c);
    t = G1::identity(c);
    GT agg = GT::identity(c);
    for (std::size_t i = 0; i < revoked.size(); ++i) {
      cv.push_back(revoked[i]->p * s);
      t = t + cv.back() * d[i];
      agg = agg * revoked[i]->y.pow(d[i]);
    }
    kappa = agg.pow(s);
  }
  h.elements.push_back(c0);
  h.elements.push_back(t);
  h.elements.push_back(c_attr);
  for (auto& e : cv) h.elements.push_back(e);
  return {derive_session_key(kappa), std::move(h)};
}

std::optional<SessionKey> decapsulate(const MasterPublicKey& mpk, const UserPrivateKey& key, const AbbeHeader& header) {
  const Curve& c = *mpk.curve;
  const auto& P = header.policy;
  if (header.elements.size() != P.revoked_users.size() + 3)
    throw Error(ErrorCode::kInvalidArgument, "header element count does not match its policy");
  if (key.elements.size() != key.attributes.size() + 2)
    throw Error(ErrorCode::kInvalidArgument, "private key element count does not match its attributes");
  for (const auto& e : header.elements) check_same_curve(c, e.curve());
  for (const auto& e : key.elements) check_same_curve(c, e.curve());

  if (!policy_satisfies(P, UserRecord{key.user_id, key.attributes})) return std::nullopt;
  const PublicUser* self = mpk.find_user(key.user_id);
  if (self == nullptr) throw Error(ErrorCode::kUnknownUser, key.user_id);

  // Aggregate the D_j of the required attributes into g2^(t / prod_P (beta + a_j)).
  std::vector<Scalar> a;
  std::vector<const G2*> dj;
  std::size_t idx = 0;
  for (const auto& name : key.attributes) {
    if (P.required_attributes.count(name)) {
      a.push_back(attribute_scalar(c, name));
      dj.push_back(&key.elements[2 + idx]);
    }
    ++idx;
  }
  auto e = lagrange_weights(a, c);
  G2 agg = G2::identity(c);
  for (std::size_t i = 0; i < dj.size(); ++i) agg = agg + *dj[i] * e[i];

  const G1& t = header.elements[1];
  const G1& c_attr = header.elements[2];
  GT own = pair(c_attr, agg);  // e(g1, g2)^(s t)

  // Split 1 / ((gamma + x_u) Q(gamma)) into partial fractions.
  std::vector<Scalar> xr;
  for (const auto& id : P.revoked_users) {
    const PublicUser* pu = mpk.find_user(id);
    if (pu == nullptr) throw Error(ErrorCode::kUnknownRevokedUser, id);
    xr.push_back(pu->x);
  }
  Scalar cu = Scalar::one(c);
  for (const auto& xv : xr) cu = cu * (xv - self->x);
  cu = cu.inverse();
  auto dv = lagrange_weights(xr, c);
  G1 mix = G1::identity(c);
  for (std::size_t i = 0; i < xr.size(); ++i)
    mix = mix + header.elements[3 + i] * (dv[i] * (self->x - xr[i]).inverse());

  GT v = own.pow(cu) * pair(mix, key.elements[1]);
  GT kappa = pair(t, key.elements[0]) / v;
  return derive_session_key(kappa);
}

bool policy_satisfies(const AccessPolicy& policy, const UserRecord& user) {
  if (policy.revoked_users.count(user.user_id)) return false;
  return std::includes(user.attributes.begin(), user.attributes.end(), policy.required_attributes.begin(),
                       policy.required_attributes.end());
}

SessionKey derive_session_key(const GT& kappa) {
  auto enc = kappa.encode();
  SessionKey k;
  k.bytes = sha256({as_bytes(kKdfTag), enc});
  return k;
}

}  // namespace abbe
