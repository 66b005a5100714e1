// Copyright 2026 The Traitscope Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <variant>

#include "traitscope/types.hpp"

namespace traitscope {

/// Idempotent map from inference variables to types. Binding a variable
/// rewrites existing entries so no range value mentions a bound variable.
class Substitution {
  public:
    [[nodiscard]] std::optional<Type> lookup(std::uint32_t var) const;
    [[nodiscard]] bool binds(std::uint32_t var) const { return bindings_.contains(var); }
    [[nodiscard]] const std::map<std::uint32_t, Type>& bindings() const { return bindings_; }
    [[nodiscard]] bool empty() const { return bindings_.empty(); }
    [[nodiscard]] std::size_t size() const { return bindings_.size(); }

    /// Precondition: `var` is unbound and `value` is already fully applied
    /// and does not mention `var`.
    void bind(std::uint32_t var, const Type& value);

    friend bool operator==(const Substitution&, const Substitution&) = default;

  private:
    std::map<std::uint32_t, Type> bindings_;
};

[[nodiscard]] Type apply(const Type& type, const Substitution& subst);
[[nodiscard]] TraitInstance apply(const TraitInstance& instance, const Substitution& subst);
[[nodiscard]] Projection apply(const Projection& projection, const Substitution& subst);
[[nodiscard]] Predicate apply(const Predicate& predicate, const Substitution& subst);

enum class UnifyFailure { ConstructorMismatch, ArityMismatch, OccursCheck };

[[nodiscard]] const char* to_string(UnifyFailure failure);

using UnifyResult = std::variant<Substitution, UnifyFailure>;

/// First-order syntactic unification with occurs check. Type variables are
/// rigid; regions are ignored; projections and existentials unify only
/// when structurally identical.
[[nodiscard]] UnifyResult unify(const Type& left, const Type& right, Substitution subst = {});
/// Unifies trait names and argument lists pairwise.
[[nodiscard]] UnifyResult unify(const TraitInstance& left, const TraitInstance& right, Substitution subst = {});

/// Same predicate kind required; components are unified left to right.
[[nodiscard]] UnifyResult unify(const Predicate& left, const Predicate& right, Substitution subst = {});

[[nodiscard]] inline bool succeeded(const UnifyResult& r) { return std::holds_alternative<Substitution>(r); }

/// Whether `var` occurs in `type`.
[[nodiscard]] bool occurs(std::uint32_t var, const Type& type);

}  // namespace traitscope
