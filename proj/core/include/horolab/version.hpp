#pragma once

namespace horolab {
inline constexpr const char* version = "0.1.0";
}
