#include "alekit/json_io.hpp"

#include <sstream>

#include "alekit/format.hpp"

namespace alekit {

namespace {

void write_value(const ordered_json& j, std::ostream& out, int depth) {
  std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
  std::string pad_in(static_cast<std::size_t>(depth + 1) * 2, ' ');
  switch (j.type()) {
    case ordered_json::value_t::object: {
      if (j.empty()) {
        out << "{}";
        return;
      }
      out << "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out << ",\n";
        first = false;
        out << pad_in << ordered_json(it.key()).dump() << ": ";
        write_value(it.value(), out, depth + 1);
      }
      out << "\n" << pad << "}";
      return;
    }
    case ordered_json::value_t::array: {
      if (j.empty()) {
        out << "[]";
        return;
      }
      out << "[\n";
      bool first = true;
      for (const auto& el : j) {
        if (!first) out << ",\n";
        first = false;
        out << pad_in;
        write_value(el, out, depth + 1);
      }
      out << "\n" << pad << "]";
      return;
    }
    case ordered_json::value_t::number_float:
      out << format_double(j.get<double>());
      return;
    default:
      // strings (with escaping), integers, booleans, null
      out << j.dump();
      return;
  }
}

}  // namespace

void write_json(const ordered_json& j, std::ostream& out) {
  write_value(j, out, 0);
  out << "\n";
}

std::string json_text(const ordered_json& j) {
  std::ostringstream s;
  write_json(j, s);
  return s.str();
}

}  // namespace alekit
