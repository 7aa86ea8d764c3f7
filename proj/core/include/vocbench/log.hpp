#pragma once

#include <functional>
#include <string_view>

namespace vocbench {

using WarningSink = std::function<void(std::string_view)>;

/// Replaces the process-wide warning sink and returns the previous one. The
/// default writes "warning: <msg>" to stderr. Pass an empty function to
/// silence warnings.
WarningSink set_warning_sink(WarningSink sink);

void warn(std::string_view message);

}  // namespace vocbench
