// Copyright 2026 The qalloc Authors
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

// A small reactive behavior-tree runtime: Sequence and Fallback control
// nodes over Condition and Action leaves. Control nodes keep no memory, so
// every tick starts again from the root.
//
// Trees are described with named leaves (BtSpec) and compiled against a
// LeafRegistry; a name with no binding fails at compile time rather than
// when the tree is ticked.

#ifndef QALLOC_BEHAVIOR_TREE_H_
#define QALLOC_BEHAVIOR_TREE_H_

#include <functional>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qalloc::bt {

enum class TickStatus { kSuccess, kFailure, kRunning };

inline std::string_view ToString(TickStatus s) {
  switch (s) {
    case TickStatus::kSuccess:
      return "Success";
    case TickStatus::kFailure:
      return "Failure";
    case TickStatus::kRunning:
      return "Running";
  }
  return "?";
}

enum class NodeKind { kSequence, kFallback, kCondition, kAction };

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Declarative tree description.
struct BtSpec {
  NodeKind kind;
  std::string name;  // leaf binding name; empty for control nodes
  std::vector<BtSpec> children;

  static BtSpec Sequence(std::vector<BtSpec> children) {
    return {NodeKind::kSequence, {}, std::move(children)};
  }
  static BtSpec Fallback(std::vector<BtSpec> children) {
    return {NodeKind::kFallback, {}, std::move(children)};
  }
  static BtSpec Condition(std::string name) {
    return {NodeKind::kCondition, std::move(name), {}};
  }
  static BtSpec Action(std::string name) {
    return {NodeKind::kAction, std::move(name), {}};
  }
};

template <typename Context>
class LeafRegistry {
 public:
  using Predicate = std::function<bool(const Context&)>;
  using Behavior = std::function<TickStatus(Context&)>;

  LeafRegistry& AddCondition(std::string name, Predicate fn) {
    conditions_[std::move(name)] = std::move(fn);
    return *this;
  }
  LeafRegistry& AddAction(std::string name, Behavior fn) {
    actions_[std::move(name)] = std::move(fn);
    return *this;
  }

  const Predicate* FindCondition(const std::string& name) const {
    auto it = conditions_.find(name);
    return it == conditions_.end() ? nullptr : &it->second;
  }
  const Behavior* FindAction(const std::string& name) const {
    auto it = actions_.find(name);
    return it == actions_.end() ? nullptr : &it->second;
  }

 private:
  std::map<std::string, Predicate, std::less<>> conditions_;
  std::map<std::string, Behavior, std::less<>> actions_;
};

// Observer invoked for every leaf that is ticked, in tick order.
struct LeafTrace {
  std::vector<std::pair<NodeKind, std::string>> ticked;
  void Clear() { ticked.clear(); }
};

template <typename Context>
class Node {
 public:
  NodeKind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  const std::vector<Node>& children() const { return children_; }

  TickStatus Tick(Context& ctx, LeafTrace* trace = nullptr) const {
    switch (kind_) {
      case NodeKind::kSequence:
        for (const Node& child : children_) {
          const TickStatus s = child.Tick(ctx, trace);
          if (s != TickStatus::kSuccess) return s;
        }
        return TickStatus::kSuccess;
      case NodeKind::kFallback:
        for (const Node& child : children_) {
          const TickStatus s = child.Tick(ctx, trace);
          if (s != TickStatus::kFailure) return s;
        }
        return TickStatus::kFailure;
      case NodeKind::kCondition:
        if (trace) trace->ticked.emplace_back(kind_, name_);
        return condition_(std::as_const(ctx)) ? TickStatus::kSuccess
                                              : TickStatus::kFailure;
      case NodeKind::kAction:
        if (trace) trace->ticked.emplace_back(kind_, name_);
        return action_(ctx);
    }
    return TickStatus::kFailure;
  }

  static Node Compile(const BtSpec& spec, const LeafRegistry<Context>& registry) {
    Node node;
    node.kind_ = spec.kind;
    node.name_ = spec.name;
    switch (spec.kind) {
      case NodeKind::kSequence:
      case NodeKind::kFallback:
        if (spec.children.empty()) {
          throw ConfigError("control node without children");
        }
        for (const BtSpec& child : spec.children) {
          node.children_.push_back(Compile(child, registry));
        }
        break;
      case NodeKind::kCondition: {
        if (!spec.children.empty()) throw ConfigError("condition '" + spec.name + "' has children");
        const auto* fn = registry.FindCondition(spec.name);
        if (!fn) throw ConfigError("unbound condition '" + spec.name + "'");
        node.condition_ = *fn;
        break;
      }
      case NodeKind::kAction: {
        if (!spec.children.empty()) throw ConfigError("action '" + spec.name + "' has children");
        const auto* fn = registry.FindAction(spec.name);
        if (!fn) throw ConfigError("unbound action '" + spec.name + "'");
        node.action_ = *fn;
        break;
      }
    }
    return node;
  }

 private:
  NodeKind kind_ = NodeKind::kSequence;
  std::string name_;
  std::vector<Node> children_;
  typename LeafRegistry<Context>::Predicate condition_;
  typename LeafRegistry<Context>::Behavior action_;
};

}  // namespace qalloc::bt

#endif  // QALLOC_BEHAVIOR_TREE_H_
