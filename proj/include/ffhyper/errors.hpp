#pragma once

#include <stdexcept>
#include <string>

namespace ffhyper {

// global size limit: fields and cyclotomic orders are capped so every
// table stays O(q) integers
inline constexpr int kQMax = 4096;

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotAPrimePower : Error { using Error::Error; };
struct LimitExceeded : Error { using Error::Error; };
struct DivisionByZero : Error { using Error::Error; };
struct DlogOfZero : Error { using Error::Error; };
struct OrderMismatch : Error { using Error::Error; };
struct ArityMismatch : Error { using Error::Error; };
struct DomainRestriction : Error { using Error::Error; };
struct UnknownIdentity : Error { using Error::Error; };
struct EmptyDomain : Error { using Error::Error; };
struct IndexOutOfRange : Error { using Error::Error; };
struct ValueOverflow : Error { using Error::Error; };
struct CacheError : Error { using Error::Error; };

} // namespace ffhyper
