#include "asd/kernel.hpp"

#include <algorithm>

namespace asd::kernel {

namespace {

constexpr size_t kSchoolbookLimit = 24;

size_t max_bits(const std::vector<Integer>& v, size_t n) {
    size_t b = 0;
    for (size_t i = 0; i < n; ++i)
        if (v[i] != 0) b = std::max(b, mpz_sizeinbase(v[i].get_mpz_t(), 2));
    return b;
}

// Writes sum_i v_i 2^{i * slot_limbs * 64} (signed) into out.
void pack(const std::vector<Integer>& v, size_t n, size_t slot_limbs, Integer& out) {
    const size_t total = n * slot_limbs;
    Integer pos, neg;
    mp_limb_t* pp = mpz_limbs_write(pos.get_mpz_t(), static_cast<mp_size_t>(total));
    mp_limb_t* np = mpz_limbs_write(neg.get_mpz_t(), static_cast<mp_size_t>(total));
    std::fill(pp, pp + total, 0);
    std::fill(np, np + total, 0);
    bool any_neg = false;
    for (size_t i = 0; i < n; ++i) {
        const mpz_srcptr z = v[i].get_mpz_t();
        int s = mpz_sgn(z);
        if (s == 0) continue;
        size_t sz = mpz_size(z);
        const mp_limb_t* src = mpz_limbs_read(z);
        mp_limb_t* dst = (s > 0 ? pp : np) + i * slot_limbs;
        std::copy(src, src + sz, dst);
        if (s < 0) any_neg = true;
    }
    mpz_limbs_finish(pos.get_mpz_t(), static_cast<mp_size_t>(total));
    mpz_limbs_finish(neg.get_mpz_t(), static_cast<mp_size_t>(total));
    if (any_neg)
        out = pos - neg;
    else
        out.swap(pos);
}

void set_from_limbs(Integer& dst, const mp_limb_t* src, size_t n) {
    while (n > 0 && src[n - 1] == 0) --n;
    if (n == 0) {
        dst = 0;
        return;
    }
    mp_limb_t* d = mpz_limbs_write(dst.get_mpz_t(), static_cast<mp_size_t>(n));
    std::copy(src, src + n, d);
    mpz_limbs_finish(dst.get_mpz_t(), static_cast<mp_size_t>(n));
}

}  // namespace

std::vector<Integer> mul_schoolbook(const std::vector<Integer>& a, const std::vector<Integer>& b, size_t nout) {
    std::vector<Integer> r(nout);
    for (size_t i = 0; i < a.size() && i < nout; ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size() && i + j < nout; ++j)
            mpz_addmul(r[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
    }
    return r;
}

std::vector<Integer> mul(const std::vector<Integer>& a, const std::vector<Integer>& b, size_t nout) {
    size_t na = std::min(a.size(), nout), nb = std::min(b.size(), nout);
    if (na == 0 || nb == 0) return std::vector<Integer>(nout);
    if (std::min(na, nb) < kSchoolbookLimit) return mul_schoolbook(a, b, nout);
    size_t ba = max_bits(a, na), bb = max_bits(b, nb);
    if (ba == 0 || bb == 0) return std::vector<Integer>(nout);
    size_t lg = 1;
    while ((size_t(1) << lg) < std::min(na, nb)) ++lg;
    size_t slot_bits = ba + bb + lg + 2;
    size_t slot_limbs = (slot_bits + GMP_NUMB_BITS - 1) / GMP_NUMB_BITS;

    Integer pa, pb, prod;
    pack(a, na, slot_limbs, pa);
    pack(b, nb, slot_limbs, pb);
    mpz_mul(prod.get_mpz_t(), pa.get_mpz_t(), pb.get_mpz_t());

    const int sign = mpz_sgn(prod.get_mpz_t());
    std::vector<Integer> r(nout);
    if (sign == 0) return r;
    const size_t plimbs = mpz_size(prod.get_mpz_t());
    const mp_limb_t* pl = mpz_limbs_read(prod.get_mpz_t());
    Integer half, full;
    mpz_setbit(half.get_mpz_t(), slot_limbs * GMP_NUMB_BITS - 1);
    mpz_setbit(full.get_mpz_t(), slot_limbs * GMP_NUMB_BITS);
    int carry = 0;
    const size_t ncoef = std::min(nout, na + nb - 1);
    Integer digit;
    for (size_t i = 0; i < ncoef; ++i) {
        size_t off = i * slot_limbs;
        if (off < plimbs)
            set_from_limbs(digit, pl + off, std::min(slot_limbs, plimbs - off));
        else
            digit = 0;
        if (carry) digit += 1;
        if (digit >= half) {
            digit -= full;
            carry = 1;
        } else {
            carry = 0;
        }
        if (sign < 0) mpz_neg(digit.get_mpz_t(), digit.get_mpz_t());
        r[i] = digit;
    }
    return r;
}

std::vector<Integer> mul_mod(const std::vector<Integer>& a, const std::vector<Integer>& b, size_t nout,
                             const Integer& m) {
    size_t na = std::min(a.size(), nout), nb = std::min(b.size(), nout);
    std::vector<Integer> r;
    if (na == 0 || nb == 0) return std::vector<Integer>(nout);
    if (std::min(na, nb) < kSchoolbookLimit) {
        r = mul_schoolbook(a, b, nout);
    } else {
        size_t bm = mpz_sizeinbase(m.get_mpz_t(), 2);
        size_t lg = 1;
        while ((size_t(1) << lg) < std::min(na, nb)) ++lg;
        size_t slot_limbs = (2 * bm + lg + 1 + GMP_NUMB_BITS - 1) / GMP_NUMB_BITS;
        Integer pa, pb, prod;
        pack(a, na, slot_limbs, pa);
        pack(b, nb, slot_limbs, pb);
        mpz_mul(prod.get_mpz_t(), pa.get_mpz_t(), pb.get_mpz_t());
        r.assign(nout, Integer(0));
        const size_t plimbs = mpz_size(prod.get_mpz_t());
        const mp_limb_t* pl = mpz_limbs_read(prod.get_mpz_t());
        const size_t ncoef = std::min(nout, na + nb - 1);
        for (size_t i = 0; i < ncoef; ++i) {
            size_t off = i * slot_limbs;
            if (off < plimbs) set_from_limbs(r[i], pl + off, std::min(slot_limbs, plimbs - off));
        }
    }
    for (auto& x : r) mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
    return r;
}

}  // namespace asd::kernel
