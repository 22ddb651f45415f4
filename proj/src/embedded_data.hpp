// Data files compiled into the library (generated source).
#ifndef SYMPARAB_EMBEDDED_DATA_HPP_
#define SYMPARAB_EMBEDDED_DATA_HPP_

#include <string_view>
#include <vector>

namespace symparab::detail {

struct EmbeddedFile {
  std::string_view name;
  std::string_view text;
};

const std::vector<EmbeddedFile>& embedded_files();

} // namespace symparab::detail

#endif // SYMPARAB_EMBEDDED_DATA_HPP_
