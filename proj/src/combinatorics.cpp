#include "hoeffding_urn/combinatorics.hpp"

namespace hoeffding_urn {

Integer binomial(long n, long k) {
    Integer out;
    if (n < 0 || k < 0 || k > n) return out;
    mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return out;
}

}  // namespace hoeffding_urn
