#include <map>
#include <mutex>

#include "nondeg/gf.hpp"
#include "nondeg/unipoly.hpp"

namespace nondeg {

Embedding::Embedding(FieldPtr source, FieldPtr target) : source_(std::move(source)), target_(std::move(target)) {
  if (source_->p() != target_->p() || target_->k() % source_->k() != 0) {
    throw Error(ErrorCode::NotASubfield, "F_" + std::to_string(source_->q()) + " is not a subfield of F_" +
                                             std::to_string(target_->q()));
  }
  const Field& dst = *target_;
  if (source_->k() == 1) {
    theta_ = dst.from_int(-static_cast<long long>(source_->modulus()[0]));
  } else {
    std::vector<Elem> mod;
    for (auto c : source_->modulus()) mod.push_back(dst.from_int(c));
    if (source_->k() == dst.k()) {
      theta_ = dst.generator();
    } else {
      // smallest root compatible with the embeddings of every intermediate subfield
      bool found = false;
      for (Elem cand : roots(UniPoly(target_, std::move(mod)))) {
        if (compatible(cand)) {
          theta_ = cand;
          found = true;
          break;
        }
      }
      if (!found) throw std::logic_error("no compatible root for a subfield embedding");
    }
  }
  powers_.push_back(1);
  for (std::uint32_t i = 1; i < source_->k(); ++i) powers_.push_back(dst.mul(powers_.back(), theta_));
  if (source_->q() <= (1u << 16)) {
    table_.resize(source_->q());
    for (Elem a = 0; a < source_->q(); ++a) {
      Elem r = 0;
      const auto d = source_->digits(a);
      for (std::size_t i = 0; i < d.size(); ++i) r = dst.add(r, dst.mul(dst.from_int(d[i]), powers_[i]));
      table_[a] = r;
    }
  }
}

bool Embedding::compatible(Elem theta) const {
  const Field& dst = *target_;
  const std::uint32_t k = source_->k();
  for (std::uint32_t d = 2; d < k; ++d) {
    if (k % d != 0) continue;
    auto sub = make_field(source_->p(), d);
    const Elem in_source = (*embedding(sub, source_))(sub->generator());
    const auto digits = source_->digits(in_source);
    Elem via = 0, power = 1;
    for (std::size_t i = 0; i < digits.size(); ++i) {
      via = dst.add(via, dst.mul(dst.from_int(digits[i]), power));
      power = dst.mul(power, theta);
    }
    if (via != embedding(sub, target_)->image_of_generator()) return false;
  }
  return true;
}

Elem Embedding::operator()(Elem a) const {
  if (!table_.empty()) return table_[a];
  const Field& dst = *target_;
  const auto d = source_->digits(a);
  Elem r = 0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d[i] != 0) r = dst.add(r, dst.mul(dst.from_int(d[i]), powers_[i]));
  }
  return r;
}

std::shared_ptr<const Embedding> embedding(const FieldPtr& source, const FieldPtr& target) {
  static std::mutex mutex;
  static std::map<std::pair<const Field*, const Field*>, std::shared_ptr<const Embedding>> cache;
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find({source.get(), target.get()}); it != cache.end()) return it->second;
  }
  auto emb = std::make_shared<const Embedding>(source, target);
  std::lock_guard lock(mutex);
  return cache.emplace(std::make_pair(source.get(), target.get()), emb).first->second;
}

FieldElement embed(const FieldElement& e, const FieldPtr& target) {
  return {target, (*embedding(e.field(), target))(e.rep())};
}

}  // namespace nondeg
