#include "srhsd/errors.hpp"

namespace srhsd {

void require(bool cond, const std::string& what) {
  if (!cond) throw DomainError(what);
}

}  // namespace srhsd
