#include "ppclone/algebra.hpp"

#include <cstdint>
#include <set>

namespace ppclone {

namespace {

std::int64_t checked_pow(int base, int exp) {
  std::int64_t r = 1;
  for (int i = 0; i < exp; ++i) {
    r *= base;
    if (r > (std::int64_t{1} << 40)) fail(Errc::domain_too_large, "operation table too large");
  }
  return r;
}

}  // namespace

OperationTable::OperationTable(std::string name, int arity, int domain_size,
                               std::vector<int> table)
    : name_(std::move(name)), arity_(arity), domain_size_(domain_size), table_(std::move(table)) {
  if (arity_ < 0) fail(Errc::invariant_violation, "operation arity must be non-negative");
  if (domain_size_ < 1) fail(Errc::invariant_violation, "domain size must be positive");
  std::int64_t want = checked_pow(domain_size_, arity_);
  if (static_cast<std::int64_t>(table_.size()) != want)
    fail(Errc::invariant_violation,
         "operation '" + name_ + "' table has " + std::to_string(table_.size()) +
             " entries, expected " + std::to_string(want));
  for (int v : table_)
    if (v < 0 || v >= domain_size_)
      fail(Errc::invariant_violation, "operation '" + name_ + "' has entry out of range");
}

int eval_operation(const OperationTable& op, std::span<const int> args) {
  if (static_cast<int>(args.size()) != op.arity())
    fail(Errc::arity_mismatch, "operation '" + op.name() + "' expects " +
                                   std::to_string(op.arity()) + " arguments, got " +
                                   std::to_string(args.size()));
  for (int a : args)
    if (a < 0 || a >= op.domain_size())
      fail(Errc::element_out_of_range,
           "argument " + std::to_string(a) + " outside domain of '" + op.name() + "'");
  return op.apply(args);
}

Algebra::Algebra(std::string name, Domain domain, std::vector<OperationTable> ops)
    : name_(std::move(name)), domain_(domain), ops_(std::move(ops)) {
  if (domain_.size < 1) fail(Errc::invariant_violation, "domain size must be positive");
  std::set<std::string> seen;
  for (const auto& op : ops_) {
    if (op.domain_size() != domain_.size)
      fail(Errc::invariant_violation,
           "operation '" + op.name() + "' domain size differs from algebra '" + name_ + "'");
    if (!seen.insert(op.name()).second)
      fail(Errc::duplicate_name, "operation '" + op.name() + "' registered twice");
  }
}

const OperationTable* Algebra::find_operation(const std::string& name) const {
  for (const auto& op : ops_)
    if (op.name() == name) return &op;
  return nullptr;
}

}  // namespace ppclone
