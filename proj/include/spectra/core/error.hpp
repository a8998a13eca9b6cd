#pragma once

#include <stdexcept>
#include <string>

namespace spectra {

/// Error carrying a machine-readable code and the name of the module that
/// raised it. The CLI maps these to exit code 2 and embeds code/module in
/// the report.
class Error : public std::runtime_error {
public:
  Error(std::string module, std::string code, const std::string& message)
      : std::runtime_error(module + ":" + code + ": " + message),
        module_(std::move(module)),
        code_(std::move(code)) {}

  const std::string& module() const { return module_; }
  const std::string& code() const { return code_; }

private:
  std::string module_;
  std::string code_;
};

}  // namespace spectra
