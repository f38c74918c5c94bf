#pragma once

#include <functional>
#include <string>
#include <string_view>

namespace vqesim {

using WarningHandler = std::function<void(std::string_view)>;

/// Routes a library warning to the installed handler (stderr by default).
void warn(std::string_view message);

/// Installs a handler and returns the previous one. Passing nullptr restores
/// the stderr default.
WarningHandler set_warning_handler(WarningHandler handler);

}  // namespace vqesim
