// SPDX-License-Identifier: Apache-2.0

#ifndef FABC_VERSION_HPP
#define FABC_VERSION_HPP

namespace fabc {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace fabc

#endif  // FABC_VERSION_HPP
