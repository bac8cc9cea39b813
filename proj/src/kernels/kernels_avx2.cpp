// AVX2 + FMA variants of the Monte Carlo kernels. This translation unit is
// compiled with -mavx2 -mfma and only entered after a runtime CPU check.
//
// log and exp follow the fdlibm reductions; erfc uses the piecewise 53-bit
// rational approximations of Boost.Math's erf_imp, with each lane gathering
// the coefficients of its own interval.
#include <immintrin.h>

#include <algorithm>
#include <array>
#include <cassert>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>

#include "kernels_internal.hpp"

namespace urllc::kernels::detail {

namespace {

constexpr std::size_t kLanes = 4;

// ---------------------------------------------------------------------------
// exp

inline __m256d pow2_int(__m256d k) {
  const __m128i k32 = _mm256_cvtpd_epi32(k);
  __m256i k64 = _mm256_cvtepi32_epi64(k32);
  k64 = _mm256_add_epi64(k64, _mm256_set1_epi64x(1023));
  return _mm256_castsi256_pd(_mm256_slli_epi64(k64, 52));
}

inline __m256d exp_pd(__m256d x) {
  const __m256d ln2_hi = _mm256_set1_pd(6.93147180369123816490e-01);
  const __m256d ln2_lo = _mm256_set1_pd(1.90821492927058770002e-10);
  const __m256d inv_ln2 = _mm256_set1_pd(1.44269504088896338700e+00);
  const __m256d p1 = _mm256_set1_pd(1.66666666666666019037e-01);
  const __m256d p2 = _mm256_set1_pd(-2.77777777770155933842e-03);
  const __m256d p3 = _mm256_set1_pd(6.61375632143793436117e-05);
  const __m256d p4 = _mm256_set1_pd(-1.65339022054652515390e-06);
  const __m256d p5 = _mm256_set1_pd(4.13813679705723846039e-08);
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d two = _mm256_set1_pd(2.0);

  // ln(DBL_MAX); operand order keeps NaN lanes NaN.
  const __m256d x_max = _mm256_set1_pd(709.782712893383973096);
  const __m256d overflow = _mm256_cmp_pd(x, x_max, _CMP_GT_OQ);
  x = _mm256_max_pd(_mm256_set1_pd(-746.0), x);
  x = _mm256_min_pd(x_max, x);

  const __m256d k =
      _mm256_round_pd(_mm256_mul_pd(x, inv_ln2), _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  const __m256d hi = _mm256_fnmadd_pd(k, ln2_hi, x);
  const __m256d lo = _mm256_mul_pd(k, ln2_lo);
  const __m256d r = _mm256_sub_pd(hi, lo);
  const __m256d rr = _mm256_mul_pd(r, r);

  __m256d poly = _mm256_fmadd_pd(rr, p5, p4);
  poly = _mm256_fmadd_pd(rr, poly, p3);
  poly = _mm256_fmadd_pd(rr, poly, p2);
  poly = _mm256_fmadd_pd(rr, poly, p1);
  const __m256d c = _mm256_fnmadd_pd(rr, poly, r);

  // y = 1 - ((lo - (r*c)/(2-c)) - hi)
  const __m256d rc = _mm256_div_pd(_mm256_mul_pd(r, c), _mm256_sub_pd(two, c));
  const __m256d y = _mm256_sub_pd(one, _mm256_sub_pd(_mm256_sub_pd(lo, rc), hi));

  // Scale in two steps so results in the subnormal range stay correct.
  const __m256d k1 = _mm256_floor_pd(_mm256_mul_pd(k, _mm256_set1_pd(0.5)));
  const __m256d k2 = _mm256_sub_pd(k, k1);
  const __m256d scaled = _mm256_mul_pd(_mm256_mul_pd(y, pow2_int(k1)), pow2_int(k2));
  return _mm256_blendv_pd(scaled, _mm256_set1_pd(std::numeric_limits<double>::infinity()), overflow);
}

// ---------------------------------------------------------------------------
// log

// Positive normal inputs only; `scale_k` is subtracted from the exponent.
inline __m256d log_normal_pd(__m256d x, __m256d scale_k) {
  const __m256d ln2_hi = _mm256_set1_pd(6.93147180369123816490e-01);
  const __m256d ln2_lo = _mm256_set1_pd(1.90821492927058770002e-10);
  const __m256d lg1 = _mm256_set1_pd(6.666666666666735130e-01);
  const __m256d lg2 = _mm256_set1_pd(3.999999999940941908e-01);
  const __m256d lg3 = _mm256_set1_pd(2.857142874366239149e-01);
  const __m256d lg4 = _mm256_set1_pd(2.222219843214978396e-01);
  const __m256d lg5 = _mm256_set1_pd(1.818357216161805012e-01);
  const __m256d lg6 = _mm256_set1_pd(1.531383769920937332e-01);
  const __m256d lg7 = _mm256_set1_pd(1.479819860511658591e-01);
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d half = _mm256_set1_pd(0.5);

  const __m256i bits = _mm256_castpd_si256(x);
  // Biased exponent as a double via the 2^52 magic-number trick.
  const __m256i biased = _mm256_srli_epi64(bits, 52);
  const __m256d magic = _mm256_set1_pd(0x1.0p52);
  __m256d k = _mm256_sub_pd(
      _mm256_castsi256_pd(_mm256_or_si256(biased, _mm256_castpd_si256(magic))),
      _mm256_add_pd(_mm256_set1_pd(0x1.0p52 + 1023.0), scale_k));

  const __m256i mant_mask = _mm256_set1_epi64x(0x000FFFFFFFFFFFFFLL);
  const __m256i one_bits = _mm256_castpd_si256(one);
  __m256d m = _mm256_castsi256_pd(_mm256_or_si256(_mm256_and_si256(bits, mant_mask), one_bits));

  // Move m into [sqrt(2)/2, sqrt(2)).
  const __m256d big = _mm256_cmp_pd(m, _mm256_set1_pd(std::numbers::sqrt2), _CMP_GT_OQ);
  m = _mm256_blendv_pd(m, _mm256_mul_pd(m, half), big);
  k = _mm256_add_pd(k, _mm256_and_pd(big, one));

  const __m256d f = _mm256_sub_pd(m, one);
  const __m256d s = _mm256_div_pd(f, _mm256_add_pd(_mm256_set1_pd(2.0), f));
  const __m256d z = _mm256_mul_pd(s, s);
  const __m256d w = _mm256_mul_pd(z, z);
  const __m256d t1 =
      _mm256_mul_pd(w, _mm256_fmadd_pd(w, _mm256_fmadd_pd(w, lg6, lg4), lg2));
  const __m256d t2 = _mm256_mul_pd(
      z, _mm256_fmadd_pd(w, _mm256_fmadd_pd(w, _mm256_fmadd_pd(w, lg7, lg5), lg3), lg1));
  const __m256d r = _mm256_add_pd(t2, t1);
  const __m256d hfsq = _mm256_mul_pd(half, _mm256_mul_pd(f, f));

  // k*ln2_hi - ((hfsq - (s*(hfsq+R) + k*ln2_lo)) - f)
  const __m256d inner = _mm256_fmadd_pd(s, _mm256_add_pd(hfsq, r), _mm256_mul_pd(k, ln2_lo));
  return _mm256_fmsub_pd(k, ln2_hi, _mm256_sub_pd(_mm256_sub_pd(hfsq, inner), f));
}

// Full domain: subnormals are scaled by 2^54 first; 0, negatives, inf and
// NaN give the same results as std::log.
inline __m256d log_pd(__m256d x) {
  const __m256d zero = _mm256_setzero_pd();
  const __m256d inf = _mm256_set1_pd(std::numeric_limits<double>::infinity());
  const __m256d tiny = _mm256_cmp_pd(x, _mm256_set1_pd(std::numeric_limits<double>::min()), _CMP_LT_OQ);
  const __m256d xs = _mm256_blendv_pd(x, _mm256_mul_pd(x, _mm256_set1_pd(0x1.0p54)), tiny);
  __m256d r = log_normal_pd(xs, _mm256_and_pd(tiny, _mm256_set1_pd(54.0)));
  r = _mm256_blendv_pd(r, _mm256_sub_pd(zero, inf), _mm256_cmp_pd(x, zero, _CMP_EQ_OQ));
  r = _mm256_blendv_pd(r, inf, _mm256_cmp_pd(x, inf, _CMP_EQ_OQ));
  const __m256d nan = _mm256_set1_pd(std::numeric_limits<double>::quiet_NaN());
  return _mm256_blendv_pd(r, nan, _mm256_cmp_pd(x, zero, _CMP_NGE_UQ));
}

// ---------------------------------------------------------------------------
// erfc

// Coefficient tables indexed [power][interval]; intervals are
// [0,0.5) [0.5,1.5) [1.5,2.5) [2.5,4.5) [4.5,inf). Interval 0 approximates
// erf(z)/z in z^2; the others approximate erfc(z) z e^{z^2}.
constexpr int kIntervals = 5;
constexpr int kTerms = 7;
static_assert(kIntervals <= 8, "coefficient rows are padded to 8 lanes");

alignas(32) constexpr double kY[8] = {1.044948577880859375,  0.405935764312744140625,
                                      0.50672817230224609375, 0.5405750274658203125,
                                      0.5579090118408203125, 0.0, 0.0, 0.0};
alignas(32) constexpr double kOffset[8] = {0.0, 0.5, 1.5, 3.5, 0.0, 0.0, 0.0, 0.0};

alignas(32) constexpr double kP[kTerms][8] = {
    {0.0834305892146531832907, -0.098090592216281240205, -0.0243500476207698441272,
     0.00295276716530971662634, 0.00628057170626964891937},
    {-0.338165134459360935041, 0.178114665841120341155, 0.0386540375035707201728,
     0.0137384425896355332126, 0.0175389834052493308818},
    {-0.0509990735146777432841, 0.191003695796775433986, 0.04394818964209516296,
     0.00840807615555585383007, -0.212652252872804219852},
    {-0.00772758345802133288487, 0.0888900368967884466578, 0.0175679436311802092299,
     0.00212825620914618649141, -0.687717681153649930619},
    {-0.000322780120964605683831, 0.0195049001251218801359, 0.00323962406290842133584,
     0.000250269961544794627958, -2.5518551727311523996},
    {0.0, 0.00180424538297014223957, 0.000235839115596880717416,
     0.113212406648847561139e-4, -3.22729451764143718517},
    {0.0, 0.0, 0.0, 0.0, -2.8175401114513378771},
};

alignas(32) constexpr double kQ[kTerms][8] = {
    {1.0, 1.0, 1.0, 1.0, 1.0},
    {0.455004033050794024546, 1.84759070983002217845, 1.53991494948552447182,
     1.04217814166938418171, 2.79257750980575282228},
    {0.0875222600142252549554, 1.42628004845511324508, 0.982403709157920235114,
     0.442597659481563127003, 11.0567237927800161565},
    {0.00858571925074406212772, 0.578052804889902404909, 0.325732924782444448493,
     0.0958492726301061423444, 15.930646027911794143},
    {0.000370900071787748000569, 0.12385097467900864233, 0.0563921837420478160373,
     0.0105982906484876531489, 22.9367376522880577224},
    {0.0, 0.0113385233577001411017, 0.00410369723978904575884,
     0.000479411269521714493907, 13.5064170191802889145},
    {0.0, 0.337511472483094676155e-5, 0.0, 0.0, 5.48409182238641741584},
};

inline __m256d horner_gather(const double (*table)[8], __m128i idx, __m256d t) {
  __m256d acc = _mm256_i32gather_pd(table[kTerms - 1], idx, 8);
  for (int k = kTerms - 2; k >= 0; --k) {
    acc = _mm256_fmadd_pd(acc, t, _mm256_i32gather_pd(table[k], idx, 8));
  }
  return acc;
}

// erfc for z >= 0.
inline __m256d erfc_nonneg_pd(__m256d z) {
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d in1 = _mm256_cmp_pd(z, _mm256_set1_pd(0.5), _CMP_GE_OQ);
  const __m256d in2 = _mm256_cmp_pd(z, _mm256_set1_pd(1.5), _CMP_GE_OQ);
  const __m256d in3 = _mm256_cmp_pd(z, _mm256_set1_pd(2.5), _CMP_GE_OQ);
  const __m256d in4 = _mm256_cmp_pd(z, _mm256_set1_pd(4.5), _CMP_GE_OQ);
  const __m256d region = _mm256_add_pd(
      _mm256_add_pd(_mm256_and_pd(in1, one), _mm256_and_pd(in2, one)),
      _mm256_add_pd(_mm256_and_pd(in3, one), _mm256_and_pd(in4, one)));
  const __m128i idx = _mm256_cvttpd_epi32(region);

  const __m256d zz = _mm256_mul_pd(z, z);
  __m256d t = _mm256_sub_pd(z, _mm256_i32gather_pd(kOffset, idx, 8));
  t = _mm256_blendv_pd(zz, t, in1);
  t = _mm256_blendv_pd(t, _mm256_div_pd(one, z), in4);

  const __m256d ratio =
      _mm256_add_pd(_mm256_i32gather_pd(kY, idx, 8),
                    _mm256_div_pd(horner_gather(kP, idx, t), horner_gather(kQ, idx, t)));

  const __m256d small = _mm256_fnmadd_pd(z, ratio, one);

  // e^{-z^2} with the rounding error of z^2 folded back in.
  const __m256d zz_err = _mm256_fmsub_pd(z, z, zz);
  const __m256d gauss =
      _mm256_mul_pd(exp_pd(_mm256_sub_pd(_mm256_setzero_pd(), zz)), _mm256_sub_pd(one, zz_err));
  const __m256d large = _mm256_div_pd(_mm256_mul_pd(ratio, gauss), z);

  return _mm256_blendv_pd(small, large, in1);
}

inline __m256d erfc_pd(__m256d x) {
  const __m256d sign_mask = _mm256_set1_pd(-0.0);
  // erfc underflows to 0 well before 30; the clamp keeps inf out of the
  // rational and NaN lanes pass through.
  const __m256d z = _mm256_min_pd(_mm256_set1_pd(30.0), _mm256_andnot_pd(sign_mask, x));
  const __m256d e = erfc_nonneg_pd(z);
  const __m256d negative = _mm256_cmp_pd(x, _mm256_setzero_pd(), _CMP_LT_OQ);
  return _mm256_blendv_pd(e, _mm256_sub_pd(_mm256_set1_pd(2.0), e), negative);
}

// ---------------------------------------------------------------------------
// Batch drivers. Full groups of four are loaded directly; the remainder is
// staged through a padded buffer so every element takes the vector path.

template <typename Fn>
void map_unary(std::span<const double> x, std::span<double> out, double pad, Fn fn) {
  assert(x.size() == out.size());
  const std::size_t n = x.size();
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    _mm256_storeu_pd(out.data() + i, fn(_mm256_loadu_pd(x.data() + i)));
  }
  if (i < n) {
    alignas(32) std::array<double, kLanes> buf;
    buf.fill(pad);
    std::copy(x.begin() + i, x.end(), buf.begin());
    _mm256_store_pd(buf.data(), fn(_mm256_load_pd(buf.data())));
    std::copy(buf.begin(), buf.begin() + (n - i), out.begin() + i);
  }
}

void log_avx2(std::span<const double> x, std::span<double> out) {
  map_unary(x, out, 1.0, log_pd);
}

void exp_avx2(std::span<const double> x, std::span<double> out) {
  map_unary(x, out, 0.0, exp_pd);
}

void erfc_avx2(std::span<const double> x, std::span<double> out) {
  map_unary(x, out, 0.0, erfc_pd);
}

void mrc_snr_avx2(std::span<const double> uniforms, int bins, double scale,
                  std::span<double> rho) {
  const std::size_t count = rho.size();
  assert(uniforms.size() == count * static_cast<std::size_t>(bins));
  const __m256d vscale = _mm256_set1_pd(scale);
  std::size_t i = 0;
  for (; i + kLanes <= count; i += kLanes) {
    __m256d sum = _mm256_setzero_pd();
    for (int l = 0; l < bins; ++l) {
      sum = _mm256_sub_pd(sum, log_pd(_mm256_loadu_pd(uniforms.data() + l * count + i)));
    }
    _mm256_storeu_pd(rho.data() + i, _mm256_mul_pd(vscale, sum));
  }
  if (i < count) {
    alignas(32) std::array<double, kLanes> buf;
    __m256d sum = _mm256_setzero_pd();
    for (int l = 0; l < bins; ++l) {
      buf.fill(1.0);
      std::copy(uniforms.begin() + l * count + i, uniforms.begin() + (l + 1) * count,
                buf.begin());
      sum = _mm256_sub_pd(sum, log_pd(_mm256_load_pd(buf.data())));
    }
    _mm256_store_pd(buf.data(), _mm256_mul_pd(vscale, sum));
    std::copy(buf.begin(), buf.begin() + (count - i), rho.begin() + i);
  }
}

struct ErrorLanes {
  __m256d n;
  __m256d rate;
  __m256d log_term;
  __m256d cap_scale;  // sqrt(n / kDispersionCap)
  bool normal;
};

inline __m256d q_from_arg(__m256d arg) {
  const __m256d a = _mm256_mul_pd(_mm256_mul_pd(arg, _mm256_set1_pd(std::numbers::sqrt2)),
                                  _mm256_set1_pd(0.5));
  const __m256d q = _mm256_mul_pd(_mm256_set1_pd(0.5), erfc_pd(a));
  return _mm256_min_pd(_mm256_max_pd(q, _mm256_setzero_pd()), _mm256_set1_pd(1.0));
}

inline __m256d conditional_error_pd(__m256d rho, const ErrorLanes& c) {
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d u = _mm256_add_pd(one, rho);
  // log1p(rho) = log(u) + (rho - (u - 1)) / u
  const __m256d l1p =
      _mm256_add_pd(log_pd(u), _mm256_div_pd(_mm256_sub_pd(rho, _mm256_sub_pd(u, one)), u));
  const __m256d log2_1p = _mm256_mul_pd(l1p, _mm256_set1_pd(std::numbers::log2e));

  if (!c.normal) {
    return q_from_arg(_mm256_mul_pd(c.cap_scale, _mm256_sub_pd(log2_1p, c.rate)));
  }

  const __m256d margin = _mm256_add_pd(_mm256_sub_pd(log2_1p, c.rate), c.log_term);
  // V(rho) = cap * (rho t)((2 + rho) t), t = 1/(1+rho)
  const __m256d t = _mm256_div_pd(one, u);
  const __m256d frac = _mm256_mul_pd(_mm256_mul_pd(rho, t),
                                     _mm256_mul_pd(_mm256_add_pd(_mm256_set1_pd(2.0), rho), t));
  const __m256d v = _mm256_mul_pd(frac, _mm256_set1_pd(kDispersionCap));
  const __m256d arg = _mm256_mul_pd(_mm256_sqrt_pd(_mm256_div_pd(c.n, v)), margin);
  const __m256d q = q_from_arg(arg);

  // rho == 0: step at the rate, 1/2 exactly on it.
  const __m256d zero_rho = _mm256_cmp_pd(rho, _mm256_setzero_pd(), _CMP_EQ_OQ);
  const __m256d pos = _mm256_cmp_pd(margin, _mm256_setzero_pd(), _CMP_GT_OQ);
  const __m256d neg = _mm256_cmp_pd(margin, _mm256_setzero_pd(), _CMP_LT_OQ);
  __m256d step = _mm256_set1_pd(0.5);
  step = _mm256_blendv_pd(step, _mm256_setzero_pd(), pos);
  step = _mm256_blendv_pd(step, one, neg);
  return _mm256_blendv_pd(q, step, zero_rho);
}

void conditional_error_avx2(std::span<const double> rho, const DecoderConstants& constants,
                            std::span<double> eps) {
  const double nd = static_cast<double>(constants.code.n);
  const ErrorLanes lanes{_mm256_set1_pd(nd), _mm256_set1_pd(constants.code.rate),
                         _mm256_set1_pd(constants.log_term),
                         _mm256_set1_pd(std::sqrt(nd / kDispersionCap)),
                         constants.model == DecoderModel::NormalApproximation};
  map_unary(rho, eps, 1.0, [&](__m256d r) { return conditional_error_pd(r, lanes); });
}

}  // namespace

const KernelSet& avx2_kernels() {
  static const KernelSet set{Isa::Avx2, "avx2",        &log_avx2,
                             &exp_avx2, &erfc_avx2,    &mrc_snr_avx2,
                             &conditional_error_avx2};
  return set;
}

}  // namespace urllc::kernels::detail
