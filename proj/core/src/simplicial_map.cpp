#include "hofib/simplicial_map.hpp"

#include <set>

#include "hofib/errors.hpp"

namespace hofib {

SimplicialMap::SimplicialMap(SSetPtr source, SSetPtr target)
    : source_(std::move(source)), target_(std::move(target)) {
  if (!source_ || !target_) throw PreconditionError("null simplicial set");
  images_.resize(static_cast<std::size_t>(source_->max_dim()) + 1);
  assigned_.resize(images_.size());
  for (int d = 0; d <= source_->max_dim(); ++d) {
    images_[d].resize(source_->count(d));
    assigned_[d].assign(source_->count(d), 0);
  }
}

SimplicialMap SimplicialMap::identity(SSetPtr x) {
  SimplicialMap id(x, x);
  for (int d = 0; d <= x->max_dim(); ++d) {
    for (GenId g : x->generators(d)) id.set(g, nondegenerate(g));
  }
  return id;
}

void SimplicialMap::set(GenId g, SimplexRef image) {
  if (!source_->contains(g)) throw RangeError("generator not in source");
  if (image.dim() != g.dim) {
    throw PreconditionError("image of '" + source_->label(g) +
                            "' has dimension " + std::to_string(image.dim()) +
                            ", expected " + std::to_string(g.dim));
  }
  if (!target_->contains(image.gen)) {
    throw PreconditionError("image of '" + source_->label(g) +
                            "' is not a simplex of the target");
  }
  images_[g.dim][g.index] = std::move(image);
  assigned_[g.dim][g.index] = 1;
}

bool SimplicialMap::is_set(GenId g) const {
  return source_->contains(g) && assigned_[g.dim][g.index] != 0;
}

const SimplexRef& SimplicialMap::operator()(GenId g) const {
  if (!is_set(g)) {
    throw PreconditionError("map is undefined on a source generator");
  }
  return images_[g.dim][g.index];
}

SimplexRef SimplicialMap::apply(const SimplexRef& x) const {
  const SimplexRef& base = (*this)(x.gen);
  if (!x.degenerate()) return base;
  return target_->apply(base, x.word.surjection(x.gen.dim));
}

bool SimplicialMap::operator==(const SimplicialMap& other) const {
  return source_ == other.source_ && target_ == other.target_ &&
         images_ == other.images_ && assigned_ == other.assigned_;
}

bool SimplicialMap::is_injective_on_generators() const {
  std::set<GenId> seen;
  for (int d = 0; d <= source_->max_dim(); ++d) {
    for (GenId g : source_->generators(d)) {
      if (!is_set(g)) return false;
      const SimplexRef& img = (*this)(g);
      if (img.degenerate() || !seen.insert(img.gen).second) return false;
    }
  }
  return true;
}

bool SimplicialMap::is_isomorphism() const {
  if (!is_injective_on_generators()) return false;
  const int top = std::max(source_->max_dim(), target_->max_dim());
  for (int d = 0; d <= top; ++d) {
    if (source_->count(d) != target_->count(d)) return false;
  }
  return true;
}

SimplicialMap compose(const SimplicialMap& g, const SimplicialMap& f) {
  if (f.target() != g.source()) {
    throw PreconditionError("composing maps with mismatched middle object");
  }
  SimplicialMap out(f.source(), g.target());
  const auto& src = *f.source();
  for (int d = 0; d <= src.max_dim(); ++d) {
    for (GenId x : src.generators(d)) out.set(x, g.apply(f(x)));
  }
  return out;
}

std::vector<Diagnostic> validate(const SimplicialMap& f) {
  std::vector<Diagnostic> out;
  const auto& src = *f.source();
  const auto& tgt = *f.target();
  for (int d = 0; d <= src.max_dim(); ++d) {
    for (GenId g : src.generators(d)) {
      if (!f.is_set(g)) {
        out.push_back({g, "no image for '" + src.label(g) + "'"});
      }
    }
  }
  if (!out.empty()) return out;
  for (int d = 1; d <= src.max_dim(); ++d) {
    for (GenId g : src.generators(d)) {
      const auto faces = src.faces(g);
      const SimplexRef& img = f(g);
      for (int i = 0; i <= d; ++i) {
        const SimplexRef lhs = f.apply(faces[i]);
        const SimplexRef rhs = tgt.face(img, i);
        if (lhs != rhs) {
          out.push_back({g, "f(d" + std::to_string(i) + " " + src.label(g) +
                                ") = " + tgt.describe(lhs) + " but d" +
                                std::to_string(i) + " f(" + src.label(g) +
                                ") = " + tgt.describe(rhs)});
        }
      }
    }
  }
  return out;
}

}  // namespace hofib
