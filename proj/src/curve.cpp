// Copyright 2026 The abbe-ndn Authors.
// SPDX-License-Identifier: Apache-2.0

#include "abbe/curve.hpp"

#include <algorithm>
#include <mutex>

#include "abbe/detail/fixed_base.hpp"
#include "abbe/errors.hpp"
#include "abbe/hash.hpp"

namespace abbe {

namespace {

std::atomic<std::uint64_t> g_pairings{0};
std::atomic<std::uint64_t> g_group_muls{0};
std::atomic<std::uint64_t> g_gt_exps{0};

mpz_class bn_p(const mpz_class& u) { return 36 * u * u * u * u + 36 * u * u * u + 24 * u * u + 6 * u + 1; }
mpz_class bn_r(const mpz_class& u) { return 36 * u * u * u * u + 36 * u * u * u + 18 * u * u + 6 * u + 1; }

mpz_class mpz_from_u64(std::uint64_t v) {
  mpz_class out;
  mpz_import(out.get_mpz_t(), 1, -1, sizeof(v), 0, 0, &v);
  return out;
}

bool is_prime(const mpz_class& n) { return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0; }

}  // namespace

const char* group_name(Group g) {
  switch (g) {
    case Group::G1: return "G1";
    case Group::G2: return "G2";
    case Group::GT: return "GT";
  }
  return "?";
}

// ---------------------------------------------------------------- Scalar

Scalar::Scalar(const Curve& curve, const mpz_class& v) : v_(curve.fr(), v) {}
Scalar::Scalar(const Curve& curve, std::uint64_t v) : v_(curve.fr(), mpz_from_u64(v)) {}

Scalar Scalar::zero(const Curve& curve) { return Scalar(Fp::zero(curve.fr())); }
Scalar Scalar::one(const Curve& curve) { return Scalar(Fp::one(curve.fr())); }

Scalar Scalar::random(const Curve& curve, Rng& rng) {
  const mpz_class& r = curve.params().r;
  for (;;) {
    auto bytes = rng.bytes(kScalarBytes);
    mpz_class v = mpz_from_bytes(bytes);
    if (v < r) return Scalar(curve, v);
  }
}

Scalar Scalar::random_nonzero(const Curve& curve, Rng& rng) {
  for (;;) {
    Scalar s = random(curve, rng);
    if (!s.is_zero()) return s;
  }
}

Scalar Scalar::hash(const Curve& curve, std::string_view tag, std::span<const std::uint8_t> data) {
  auto d = sha512({as_bytes(tag), data});
  return Scalar(curve, mpz_from_bytes(d));
}

Scalar Scalar::from_bytes(const Curve& curve, std::span<const std::uint8_t> be) {
  if (be.size() != kScalarBytes) throw Error(ErrorCode::kDecode, "scalar must be 32 bytes");
  mpz_class v = mpz_from_bytes(be);
  if (v >= curve.params().r) throw Error(ErrorCode::kDecode, "scalar not reduced modulo r");
  return Scalar(curve, v);
}

std::string Scalar::to_hex() const { return "0x" + abbe::to_hex(to_bytes()); }

// ---------------------------------------------------------------- G1

G1 G1::identity(const Curve& curve) {
  return curve.make_g1(detail::Jacobian<Fp>::infinity(Fp::one(curve.fp())));
}

G1 G1::operator*(const Scalar& k) const {
  g_group_muls.fetch_add(1, std::memory_order_relaxed);
  return G1(curve_, p_.mul(k.to_mpz()));
}

std::vector<std::uint8_t> G1::encode() const {
  std::vector<std::uint8_t> out(kG1Bytes, 0);
  if (is_identity()) return out;
  Fp x, y;
  p_.to_affine(x, y);
  out[0] = y.is_odd() ? 0x03 : 0x02;
  auto xb = x.to_bytes();
  std::copy(xb.begin(), xb.end(), out.begin() + 1);
  return out;
}

G1 G1::decode(const Curve& curve, std::span<const std::uint8_t> bytes) {
  if (bytes.size() != kG1Bytes) throw Error(ErrorCode::kDecode, "G1 encoding must be 33 bytes");
  if (bytes[0] == 0x00) {
    if (std::any_of(bytes.begin() + 1, bytes.end(), [](std::uint8_t b) { return b != 0; }))
      throw Error(ErrorCode::kDecode, "non-canonical G1 identity");
    return identity(curve);
  }
  if (bytes[0] != 0x02 && bytes[0] != 0x03) throw Error(ErrorCode::kDecode, "bad G1 prefix");
  Fp x = Fp::from_bytes(curve.fp(), bytes.subspan(1));
  Fp rhs = x.square() * x + curve.b1();
  Fp y;
  if (!rhs.sqrt(y)) throw Error(ErrorCode::kDecode, "G1 x-coordinate not on curve");
  if (y.is_odd() != (bytes[0] == 0x03)) y = -y;
  // BN curves have prime order r over Fp, so every curve point is in G1.
  return curve.make_g1(detail::Jacobian<Fp>::from_affine(x, y));
}

// ---------------------------------------------------------------- G2

G2 G2::identity(const Curve& curve) {
  return curve.make_g2(detail::Jacobian<Fp2>::infinity(Fp2::one(curve.fp())));
}

G2 G2::operator*(const Scalar& k) const {
  g_group_muls.fetch_add(1, std::memory_order_relaxed);
  return G2(curve_, p_.mul(k.to_mpz()));
}

std::vector<std::uint8_t> G2::encode() const {
  std::vector<std::uint8_t> out(kG2Bytes, 0);
  if (is_identity()) return out;
  Fp2 x, y;
  p_.to_affine(x, y);
  out[0] = y.sign() ? 0x03 : 0x02;
  auto b0 = x.c0.to_bytes();
  auto b1 = x.c1.to_bytes();
  std::copy(b0.begin(), b0.end(), out.begin() + 1);
  std::copy(b1.begin(), b1.end(), out.begin() + 33);
  return out;
}

G2 G2::decode(const Curve& curve, std::span<const std::uint8_t> bytes) {
  if (bytes.size() != kG2Bytes) throw Error(ErrorCode::kDecode, "G2 encoding must be 65 bytes");
  if (bytes[0] == 0x00) {
    if (std::any_of(bytes.begin() + 1, bytes.end(), [](std::uint8_t b) { return b != 0; }))
      throw Error(ErrorCode::kDecode, "non-canonical G2 identity");
    return identity(curve);
  }
  if (bytes[0] != 0x02 && bytes[0] != 0x03) throw Error(ErrorCode::kDecode, "bad G2 prefix");
  Fp2 x{Fp::from_bytes(curve.fp(), bytes.subspan(1, 32)), Fp::from_bytes(curve.fp(), bytes.subspan(33, 32))};
  Fp2 rhs = x.square() * x + curve.b_twist();
  Fp2 y;
  if (!rhs.sqrt(y)) throw Error(ErrorCode::kDecode, "G2 x-coordinate not on twist");
  if (y.sign() != (bytes[0] == 0x03)) y = -y;
  G2 q = curve.make_g2(detail::Jacobian<Fp2>::from_affine(x, y));
  if (!q.mul_raw(curve.params().r).is_identity()) throw Error(ErrorCode::kDecode, "G2 point outside order-r subgroup");
  return q;
}

// ---------------------------------------------------------------- GT

GT GT::identity(const Curve& curve) { return curve.make_gt(Fp12::one(curve.fp())); }

GT GT::pow(const Scalar& k) const {
  g_gt_exps.fetch_add(1, std::memory_order_relaxed);
  return GT(curve_, v_.cyclotomic_pow(k.to_mpz()));
}

std::vector<std::uint8_t> GT::encode() const {
  std::vector<std::uint8_t> out;
  out.reserve(kGtBytes);
  for (int k = 0; k < 6; ++k) {
    auto a = v_.coeff(k).c0.to_bytes();
    auto b = v_.coeff(k).c1.to_bytes();
    out.insert(out.end(), a.begin(), a.end());
    out.insert(out.end(), b.begin(), b.end());
  }
  return out;
}

GT GT::decode(const Curve& curve, std::span<const std::uint8_t> bytes) {
  if (bytes.size() != kGtBytes) throw Error(ErrorCode::kDecode, "GT encoding must be 384 bytes");
  Fp12 v = Fp12::zero(curve.fp());
  for (int k = 0; k < 6; ++k) {
    v.coeff(k).c0 = Fp::from_bytes(curve.fp(), bytes.subspan(64 * k, 32));
    v.coeff(k).c1 = Fp::from_bytes(curve.fp(), bytes.subspan(64 * k + 32, 32));
  }
  if (!v.pow(curve.params().r).is_one()) throw Error(ErrorCode::kDecode, "GT element outside order-r subgroup");
  return curve.make_gt(v);
}

// ---------------------------------------------------------------- Curve

void Curve::init(std::uint64_t u) {
  if (u == 0) throw Error(ErrorCode::kInvalidArgument, "BN parameter u must be positive");
  mpz_class U = mpz_from_u64(u);
  mpz_class p = bn_p(U);
  mpz_class r = bn_r(U);
  if (mpz_sizeinbase(p.get_mpz_t(), 2) > 256) throw Error(ErrorCode::kInvalidArgument, "p exceeds 256 bits");
  if (!is_prime(p) || !is_prime(r)) throw Error(ErrorCode::kInvalidArgument, "u does not give prime p and r");
  params_.u = u;
  params_.p = p;
  params_.r = r;
  fp_ = std::make_unique<ModulusContext>(p);
  install_tower_constants(*fp_);
  fr_ = std::make_unique<ModulusContext>(r);
  const ModulusContext* F = fp_.get();

  // G1: smallest b with a point of order r, first x giving a point.
  bool found = false;
  for (std::uint64_t b = 1; b < 64 && !found; ++b) {
    Fp bb(F, b);
    for (std::uint64_t xs = 1; xs < 64; ++xs) {
      Fp x(F, xs);
      Fp y;
      if (!(x.square() * x + bb).sqrt(y)) continue;
      if (y.is_odd()) y = -y;
      auto pt = detail::Jacobian<Fp>::from_affine(x, y);
      if (pt.mul(r).is_infinity()) {
        b_ = b;
        b1_ = bb;
        g1_ = G1(this, pt);
        found = true;
      }
      break;
    }
  }
  if (!found) throw Error(ErrorCode::kInvalidArgument, "no suitable curve coefficient b");

  // G2 on the sextic twist whose order is divisible by r.
  Fp2 xi = Fp2::xi(F);
  mpz_class h2 = 2 * p - r;
  found = false;
  for (TwistType t : {TwistType::D, TwistType::M}) {
    Fp2 bt = (t == TwistType::D) ? Fp2{b1_, Fp::zero(F)} * xi.inverse() : Fp2{b1_, Fp::zero(F)} * xi;
    for (std::uint64_t xs = 0; xs < 64 && !found; ++xs) {
      Fp2 x{Fp(F, xs), Fp::one(F)};
      Fp2 y;
      if (!(x.square() * x + bt).sqrt(y)) continue;
      if (y.sign()) y = -y;
      auto q = detail::Jacobian<Fp2>::from_affine(x, y).mul(h2);
      if (q.is_infinity() || !q.mul(r).is_infinity()) break;  // wrong twist
      Fp2 ax, ay;
      q.to_affine(ax, ay);
      twist_ = t;
      b2_ = bt;
      g2_ = G2(this, detail::Jacobian<Fp2>::from_affine(ax, ay));
      found = true;
    }
    if (found) break;
  }
  if (!found) throw Error(ErrorCode::kInvalidArgument, "no twist of order divisible by r");

  Fp2 fx = Fp2::from_raw(F, F->frob[2]);
  Fp2 fy = Fp2::from_raw(F, F->frob[3]);
  if (twist_ == TwistType::M) {
    fx = fx.inverse();
    fy = fy.inverse();
  }
  frob_x_ = fx;
  frob_y_ = fy;

  params_.g1 = g1_.encode();
  params_.g2 = g2_.encode();
  gt_gen_ = pair_uncounted(g1_, g2_);
  if (gt_gen_.is_identity()) throw Error(ErrorCode::kInvalidArgument, "degenerate pairing");
}

CurvePtr Curve::from_u(std::uint64_t u) {
  std::shared_ptr<Curve> c(new Curve());
  c->init(u);
  return c;
}

CurvePtr Curve::from_params(const CurveParams& params) {
  if (params.family != "BN") throw Error(ErrorCode::kInvalidArgument, "unsupported curve family " + params.family);
  if (params.security_bits != 128)
    throw Error(ErrorCode::kUnsupportedSecurityLevel, "security level " + std::to_string(params.security_bits));
  mpz_class U = mpz_from_u64(params.u);
  if (bn_p(U) != params.p) throw Error(ErrorCode::kInvalidArgument, "p does not match the BN polynomial in u");
  if (bn_r(U) != params.r) throw Error(ErrorCode::kInvalidArgument, "r does not match the BN polynomial in u");
  std::shared_ptr<Curve> c(new Curve());
  c->init(params.u);
  if (params.g1 != c->params_.g1 || params.g2 != c->params_.g2) {
    G1 g1 = G1::decode(*c, params.g1);
    G2 g2 = G2::decode(*c, params.g2);
    if (g1.is_identity() || g2.is_identity()) throw Error(ErrorCode::kInvalidArgument, "generator is the identity");
    c->g1_ = g1;
    c->g2_ = g2;
    c->params_.g1 = g1.encode();
    c->params_.g2 = g2.encode();
    c->gt_gen_ = pair_uncounted(g1, g2);
    if (c->gt_gen_.is_identity()) throw Error(ErrorCode::kInvalidArgument, "degenerate pairing");
  }
  return c;
}

namespace {

struct AddPoints {
  detail::Jacobian<Fp2> operator()(const detail::Jacobian<Fp2>& a, const detail::Jacobian<Fp2>& b) const {
    return a.add(b);
  }
  detail::Jacobian<Fp2> dbl(const detail::Jacobian<Fp2>& a) const { return a.dbl(); }
};

struct MulFp12 {
  Fp12 operator()(const Fp12& a, const Fp12& b) const { return a * b; }
  // The GT base lies in the cyclotomic subgroup.
  Fp12 dbl(const Fp12& a) const { return a.cyclotomic_square(); }
};

}  // namespace

struct Curve::G2Table : detail::FixedBaseTable<detail::Jacobian<Fp2>, AddPoints> {
  using FixedBaseTable::FixedBaseTable;
};

struct Curve::GTTable : detail::FixedBaseTable<Fp12, MulFp12> {
  using FixedBaseTable::FixedBaseTable;
};

Curve::~Curve() = default;

G2 Curve::g2_mul(const Scalar& k) const {
  std::call_once(g2_table_once_, [this] {
    g2_table_ = std::make_unique<G2Table>(g2_.point(), G2::identity(*this).point(),
                                          mpz_sizeinbase(params_.r.get_mpz_t(), 2));
  });
  g_group_muls.fetch_add(1, std::memory_order_relaxed);
  return make_g2(g2_table_->eval(k.to_mpz()));
}

GT Curve::gt_pow(const Scalar& k) const {
  if (gt_uses_.fetch_add(1, std::memory_order_relaxed) < kGtTableAfter) return gt_gen_.pow(k);
  std::call_once(gt_table_once_, [this] {
    gt_table_ = std::make_unique<GTTable>(gt_gen_.value(), Fp12::one(fp()), mpz_sizeinbase(params_.r.get_mpz_t(), 2));
  });
  g_gt_exps.fetch_add(1, std::memory_order_relaxed);
  return make_gt(gt_table_->eval(k.to_mpz()));
}

bool Curve::same_as(const Curve& o) const {
  return this == &o || (params_.p == o.params_.p && params_.r == o.params_.r && params_.g1 == o.params_.g1 &&
                        params_.g2 == o.params_.g2);
}

detail::Jacobian<Fp2> Curve::twist_frobenius(const detail::Jacobian<Fp2>& q) const {
  return {q.x.conj() * frob_x_, q.y.conj() * frob_y_, q.z.conj()};
}

CurvePtr generate_curve(int security_bits, std::span<const std::uint8_t> seed) {
  if (security_bits != 128)
    throw Error(ErrorCode::kUnsupportedSecurityLevel, "only 128-bit security is supported, got " + std::to_string(security_bits));
  std::string_view seed_view(reinterpret_cast<const char*>(seed.data()), seed.size());
  // Band of u with r >= 2^255 and p < 2^256.
  mpz_class two255 = mpz_class(1) << 255, two256 = mpz_class(1) << 256;
  std::uint64_t lo = std::uint64_t{1} << 62, hi = ~std::uint64_t{0} >> 1;
  {
    std::uint64_t a = lo, b = hi;  // smallest u with r(u) >= 2^255
    while (a < b) {
      std::uint64_t m = a + (b - a) / 2;
      if (bn_r(mpz_from_u64(m)) >= two255) b = m; else a = m + 1;
    }
    lo = a;
    a = lo, b = hi;  // largest u with p(u) < 2^256
    while (a < b) {
      std::uint64_t m = a + (b - a + 1) / 2;
      if (bn_p(mpz_from_u64(m)) < two256) a = m; else b = m - 1;
    }
    hi = a;
  }
  std::uint64_t start;
  if (seed_view == kDefaultCurveSeed) {
    start = kDefaultCurveU;
  } else {
    auto d = sha256(seed);
    std::uint64_t h = 0;
    for (int i = 0; i < 8; ++i) h = (h << 8) | d[i];
    start = lo + h % (hi - lo + 1);
  }
  std::uint64_t span = hi - lo + 1;
  for (std::uint64_t step = 0; step < span; ++step) {
    std::uint64_t u = lo + (start - lo + step) % span;
    if ((u & 1) == 0) continue;  // p = 3 mod 4 needs odd u
    mpz_class U = mpz_from_u64(u);
    if (!is_prime(bn_r(U)) || !is_prime(bn_p(U))) continue;
    return Curve::from_u(u);
  }
  throw Error(ErrorCode::kInvalidArgument, "curve search exhausted");
}

CurvePtr default_curve() {
  static CurvePtr curve = generate_curve(128, as_bytes(kDefaultCurveSeed));
  return curve;
}

// ---------------------------------------------------------------- pairing

namespace {

Fp2 lift(const Fp& a) { return {a, Fp::zero(a.ctx())}; }

Fp12 line(const Curve& c, const Fp2& lambda, const Fp2& xt, const Fp2& yt, const Fp& xp, const Fp& yp) {
  Fp12 l = Fp12::zero(c.fp());
  Fp2 k = lambda * xt - yt;
  Fp2 m = -(lambda * xp);
  if (c.twist() == TwistType::D) {
    l.coeff(0) = lift(yp);
    l.coeff(1) = m;
    l.coeff(3) = k;
  } else {
    l.coeff(0) = k;
    l.coeff(2) = m;
    l.coeff(3) = lift(yp);
  }
  return l;
}

Fp12 vertical(const Curve& c, const Fp2& xt, const Fp& xp) {
  Fp12 l = Fp12::zero(c.fp());
  if (c.twist() == TwistType::D) {
    l.coeff(0) = lift(xp);
    l.coeff(2) = -xt;
  } else {
    l.coeff(0) = -xt;
    l.coeff(2) = lift(xp);
  }
  return l;
}

struct AffineT {
  Fp2 x, y;
  bool inf = false;
};

// Multiplies f by the line through t and q (tangent when equal) at p and
// advances t to t + q.
void add_step(const Curve& c, Fp12& f, AffineT& t, const AffineT& q, const Fp& xp, const Fp& yp) {
  if (t.inf) {
    t = q;
    return;
  }
  Fp2 lambda;
  if (t.x == q.x) {
    if (t.y != q.y || t.y.is_zero()) {
      f = f * vertical(c, t.x, xp);
      t.inf = true;
      return;
    }
    lambda = (t.x.square() * Fp(c.fp(), 3)) * t.y.dbl().inverse();
  } else {
    lambda = (q.y - t.y) * (q.x - t.x).inverse();
  }
  f = f * line(c, lambda, t.x, t.y, xp, yp);
  Fp2 x3 = lambda.square() - t.x - q.x;
  Fp2 y3 = lambda * (t.x - x3) - t.y;
  t.x = x3;
  t.y = y3;
}

}  // namespace

Fp12 miller_loop(const G1& a, const G2& b) {
  const Curve& c = *a.curve();
  if (a.is_identity() || b.is_identity()) return Fp12::one(c.fp());
  Fp xp, yp;
  a.point().to_affine(xp, yp);
  AffineT q;
  b.point().to_affine(q.x, q.y);

  mpz_class loop = 6 * mpz_from_u64(c.params().u) + 2;
  AffineT t = q;
  Fp12 f = Fp12::one(c.fp());
  for (std::size_t i = mpz_sizeinbase(loop.get_mpz_t(), 2) - 1; i-- > 0;) {
    f = f.square();
    add_step(c, f, t, t, xp, yp);
    if (mpz_tstbit(loop.get_mpz_t(), i)) add_step(c, f, t, q, xp, yp);
  }
  auto q1j = c.twist_frobenius(b.point());
  auto q2j = c.twist_frobenius(q1j).neg();
  AffineT q1, q2;
  q1j.to_affine(q1.x, q1.y);
  q2j.to_affine(q2.x, q2.y);
  add_step(c, f, t, q1, xp, yp);
  add_step(c, f, t, q2, xp, yp);
  return f;
}

Fp12 final_exponentiation(const Curve& c, const Fp12& in) {
  // Easy part: f^((p^6 - 1)(p^2 + 1)).
  Fp12 f = in.conj() * in.inverse();
  f = f.frobenius2() * f;
  // Hard part for u > 0 (Scott et al. addition chain).
  std::uint64_t u = c.params().u;
  Fp12 fu = f.cyclotomic_pow_u64(u);
  Fp12 fu2 = fu.cyclotomic_pow_u64(u);
  Fp12 fu3 = fu2.cyclotomic_pow_u64(u);
  Fp12 fp2 = f.frobenius2();
  Fp12 y0 = f.frobenius() * fp2 * fp2.frobenius();
  Fp12 y1 = f.conj();
  Fp12 y2 = fu2.frobenius2();
  Fp12 y3 = fu.frobenius().conj();
  Fp12 y4 = (fu * fu2.frobenius()).conj();
  Fp12 y5 = fu2.conj();
  Fp12 y6 = (fu3 * fu3.frobenius()).conj();
  Fp12 t0 = y6.cyclotomic_square() * y4 * y5;
  Fp12 t1 = y3 * y5 * t0;
  t0 = t0 * y2;
  t1 = (t1.cyclotomic_square() * t0).cyclotomic_square();
  t0 = t1 * y1;
  t1 = t1 * y0;
  t0 = t0.cyclotomic_square() * t1;
  return t0;
}

Fp12 final_exponentiation_naive(const Curve& c, const Fp12& f) {
  const mpz_class& p = c.params().p;
  mpz_class p12;
  mpz_pow_ui(p12.get_mpz_t(), p.get_mpz_t(), 12);
  return f.pow((p12 - 1) / c.params().r);
}

GT pair_uncounted(const G1& a, const G2& b) {
  const Curve& c = *a.curve();
  return c.make_gt(final_exponentiation(c, miller_loop(a, b)));
}

GT pair(const G1& a, const G2& b) {
  g_pairings.fetch_add(1, std::memory_order_relaxed);
  return pair_uncounted(a, b);
}

// ---------------------------------------------------------------- generic handles

namespace {

void require_group(const GroupElement& e, Group g) {
  if (e.group != g)
    throw Error(ErrorCode::kWrongGroup, std::string("expected ") + group_name(g) + ", got " + group_name(e.group));
}

}  // namespace

GroupElement pair(const Curve& curve, const GroupElement& a, const GroupElement& b) {
  require_group(a, Group::G1);
  require_group(b, Group::G2);
  return GroupElement::of(pair(G1::decode(curve, a.encoding), G2::decode(curve, b.encoding)));
}

GroupElement scalar_mul(const Curve& curve, const Scalar& x, const GroupElement& e) {
  switch (e.group) {
    case Group::G1: return GroupElement::of(G1::decode(curve, e.encoding) * x);
    case Group::G2: return GroupElement::of(G2::decode(curve, e.encoding) * x);
    case Group::GT: return GroupElement::of(GT::decode(curve, e.encoding).pow(x));
  }
  throw Error(ErrorCode::kWrongGroup, "unknown group");
}

GroupElement group_add(const Curve& curve, const GroupElement& a, const GroupElement& b) {
  require_group(b, a.group);
  switch (a.group) {
    case Group::G1: return GroupElement::of(G1::decode(curve, a.encoding) + G1::decode(curve, b.encoding));
    case Group::G2: return GroupElement::of(G2::decode(curve, a.encoding) + G2::decode(curve, b.encoding));
    case Group::GT: return GroupElement::of(GT::decode(curve, a.encoding) * GT::decode(curve, b.encoding));
  }
  throw Error(ErrorCode::kWrongGroup, "unknown group");
}

GroupElement identity(const Curve& curve, Group g) {
  switch (g) {
    case Group::G1: return GroupElement::of(G1::identity(curve));
    case Group::G2: return GroupElement::of(G2::identity(curve));
    case Group::GT: return GroupElement::of(GT::identity(curve));
  }
  throw Error(ErrorCode::kWrongGroup, "unknown group");
}

void validate(const Curve& curve, const GroupElement& e) {
  switch (e.group) {
    case Group::G1: G1::decode(curve, e.encoding); return;
    case Group::G2: G2::decode(curve, e.encoding); return;
    case Group::GT: GT::decode(curve, e.encoding); return;
  }
}

namespace instrumentation {
std::uint64_t pairings() { return g_pairings.load(); }
std::uint64_t group_multiplications() { return g_group_muls.load(); }
std::uint64_t gt_exponentiations() { return g_gt_exps.load(); }
void reset() {
  g_pairings = 0;
  g_group_muls = 0;
  g_gt_exps = 0;
}
}  // namespace instrumentation

}  // namespace abbe
