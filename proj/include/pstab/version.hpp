#pragma once

namespace pstab {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kReportSchema = "pstab-report/1";
inline constexpr const char* kFragmentSchema = "pstab-fragment/1";

}  // namespace pstab
