#pragma once

namespace casq {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kReportSchema = "casimir-qubit/1";

}  // namespace casq
