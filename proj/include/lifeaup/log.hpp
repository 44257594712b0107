#pragma once

#include <functional>
#include <string_view>

namespace lifeaup {

// Warnings go to stderr unless a sink is installed; pass nullptr to restore.
using WarningSink = std::function<void(std::string_view)>;
void set_warning_sink(WarningSink sink);
void warn(std::string_view message);

}  // namespace lifeaup
