#pragma once

// One M23 context with tables, shared by every test case in the binary.

#include "spreadkit/m23.hpp"

namespace fixture {

inline std::filesystem::path data_dir() { return SPREADKIT_DATA_DIR; }

inline const spreadkit::m23::Context& m23() {
  static const spreadkit::m23::Context ctx = [] {
    auto c = spreadkit::m23::Context::load(spreadkit::m23::DataFiles::in(data_dir()));
    c.build_tables(20240611, 1);
    return c;
  }();
  return ctx;
}

}  // namespace fixture
