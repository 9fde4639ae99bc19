#include "triemit/csv.hpp"

#include <charconv>
#include <stdexcept>
#include <system_error>

namespace triemit {

std::string format_double(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value,
                                   std::chars_format::general, 15);
    if (res.ec != std::errc{}) {
        throw std::runtime_error("number formatting failed");
    }
    return std::string(buf, res.ptr);
}

} // namespace triemit
