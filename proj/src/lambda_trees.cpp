#include <algorithm>
#include <future>
#include <set>

#include "streamspec/lambda.hpp"

namespace streamspec::lambda {

namespace {

TreeVar head_of(const Term& h) {
  switch (h.kind()) {
    case Term::Kind::Var: return {h.index()};
    case Term::Kind::Free: return {h.name()};
    default: return {std::string("☐")};
  }
}

// Splits x M1 .. Mm into its head and arguments.
Term spine(const Term& t, std::vector<Term>& args) {
  Term h = t;
  while (h.kind() == Term::Kind::App) {
    args.push_back(h.arg());
    h = h.fn();
  }
  std::reverse(args.begin(), args.end());
  return h;
}

Tree bohm(const Term& t, std::size_t depth, const TreeOptions& opts) {
  if (depth == 0) return Tree::unknown(0);
  Reduction r = find_hnf(t, {opts.budgetPerNode, opts.detectLoops});
  if (r.status == Reduction::Status::Unknown) return Tree::unknown(r.steps);
  if (r.status == Reduction::Status::Diverges) return Tree::bottom();
  Tree node;
  node.kind = Tree::Kind::Node;
  Term cur = r.term;
  while (cur.kind() == Term::Kind::Abs) {
    node.binders.push_back(cur.name());
    cur = cur.body();
  }
  std::vector<Term> args;
  node.head = head_of(spine(cur, args));
  for (const auto& a : args) node.children.push_back(bohm(a, depth - 1, opts));
  return node;
}

Tree levy_longo(const Term& t, std::size_t depth, std::size_t lambdaRun, const TreeOptions& opts) {
  if (depth == 0) return Tree::unknown(0);
  Reduction r = find_whnf(t, {opts.budgetPerNode, opts.detectLoops});
  if (r.status == Reduction::Status::Unknown) return Tree::unknown(r.steps);
  if (r.status == Reduction::Status::Diverges) return Tree::bottom();
  Tree node;
  if (r.term.kind() == Term::Kind::Abs) {
    if (lambdaRun >= opts.maxLambdaRun) return Tree::unknown(0);
    node.kind = Tree::Kind::Lam;
    node.binders = {r.term.name()};
    node.children.push_back(levy_longo(r.term.body(), depth, lambdaRun + 1, opts));
    return node;
  }
  node.kind = Tree::Kind::Node;
  std::vector<Term> args;
  node.head = head_of(spine(r.term, args));
  for (const auto& a : args) node.children.push_back(levy_longo(a, depth - 1, 0, opts));
  return node;
}

// Does the tree mention the binder k levels above it?
bool refers_to(const Tree& t, std::uint32_t k) {
  switch (t.kind) {
    case Tree::Kind::Lam:
      return refers_to(t.children[0], k + 1);
    case Tree::Kind::Node: {
      auto n = static_cast<std::uint32_t>(t.binders.size());
      if (auto* i = std::get_if<std::uint32_t>(&t.head.ref); i && *i == k + n) return true;
      return std::any_of(t.children.begin(), t.children.end(), [&](const Tree& c) { return refers_to(c, k + n); });
    }
    default:
      return false;
  }
}

class TreePrinter {
 public:
  std::string print(const Tree& t) {
    switch (t.kind) {
      case Tree::Kind::Bottom: return "⊥";
      case Tree::Kind::Unknown: return "?";
      case Tree::Kind::Lam: {
        std::string n = bind(t.binders[0], t.children[0], 0);
        std::string s = "λ" + n + "." + print(t.children[0]);
        scope_.pop_back();
        return s;
      }
      case Tree::Kind::Node: break;
    }
    std::string s;
    if (!t.binders.empty()) {
      s = "λ";
      for (std::size_t i = 0; i < t.binders.size(); ++i) {
        // names only need to avoid outer binders that the node still mentions
        Tree rest = t;
        rest.binders.erase(rest.binders.begin(), rest.binders.begin() + static_cast<std::ptrdiff_t>(i + 1));
        s += (i ? " " : "") + bind(t.binders[i], rest, 0);
      }
      s += ".";
    }
    if (auto* i = std::get_if<std::uint32_t>(&t.head.ref))
      s += *i < scope_.size() ? scope_[scope_.size() - 1 - *i] : "#" + std::to_string(*i - scope_.size());
    else
      s += std::get<std::string>(t.head.ref);
    if (!t.children.empty()) {
      s += " [";
      for (std::size_t i = 0; i < t.children.size(); ++i) s += (i ? ", " : "") + print(t.children[i]);
      s += "]";
    }
    scope_.resize(scope_.size() - t.binders.size());
    return s;
  }

 private:
  std::string bind(std::string hint, const Tree& below, std::uint32_t) {
    if (hint.empty()) hint = "x";
    while (true) {
      bool clash = false;
      for (std::size_t d = 0; d < scope_.size() && !clash; ++d)
        clash = scope_[scope_.size() - 1 - d] == hint && refers_to(below, static_cast<std::uint32_t>(d + 1));
      if (!clash) break;
      hint += "'";
    }
    scope_.push_back(hint);
    return hint;
  }

  std::vector<std::string> scope_;
};

void compare(const Tree& a, const Tree& b, std::size_t depth, std::vector<std::size_t>& path, TreeComparison& out,
             std::optional<std::vector<std::size_t>>& firstUnknown) {
  if (out.kind == TreeComparison::Kind::Diff || depth == 0) return;
  if (a.kind == Tree::Kind::Unknown || b.kind == Tree::Kind::Unknown) {
    if (!firstUnknown) firstUnknown = path;
    return;
  }
  bool same = a.kind == b.kind;
  if (same && a.kind == Tree::Kind::Node)
    same = a.binders.size() == b.binders.size() && a.head == b.head && a.children.size() == b.children.size();
  if (!same) {
    out.kind = TreeComparison::Kind::Diff;
    out.path = path;
    return;
  }
  const std::size_t below = a.kind == Tree::Kind::Lam ? depth : depth - 1;
  for (std::size_t i = 0; i < a.children.size(); ++i) {
    path.push_back(i);
    compare(a.children[i], b.children[i], below, path, out, firstUnknown);
    path.pop_back();
  }
}

void free_names(const Term& t, std::set<std::string>& out) {
  switch (t.kind()) {
    case Term::Kind::Free: out.insert(t.name()); break;
    case Term::Kind::Abs: free_names(t.body(), out); break;
    case Term::Kind::App:
      free_names(t.fn(), out);
      free_names(t.arg(), out);
      break;
    default: break;
  }
}

// All tuples of length k over the seeds, in lexicographic seed order.
std::vector<std::vector<Seed>> tuples(const std::vector<Seed>& seeds, std::size_t k) {
  std::vector<std::vector<Seed>> out{{}};
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<std::vector<Seed>> next;
    for (const auto& t : out)
      for (const auto& s : seeds) {
        auto u = t;
        u.push_back(s);
        next.push_back(std::move(u));
      }
    out = std::move(next);
  }
  return out;
}

}  // namespace

Tree bohm_tree(const Term& t, std::size_t depth, TreeOptions opts) { return bohm(t, depth, opts); }

Tree levy_longo_tree(const Term& t, std::size_t depth, TreeOptions opts) { return levy_longo(t, depth, 0, opts); }

std::string to_string(const Tree& t) { return TreePrinter().print(t); }

std::string TreeComparison::path_string() const {
  if (path.empty()) return "ε";
  std::string s;
  for (std::size_t i = 0; i < path.size(); ++i) s += (i ? "." : "") + std::to_string(path[i]);
  return s;
}

TreeComparison tree_equal(const Tree& a, const Tree& b, std::size_t depth) {
  TreeComparison out;
  std::optional<std::vector<std::size_t>> firstUnknown;
  std::vector<std::size_t> path;
  compare(a, b, depth, path, out, firstUnknown);
  if (out.kind == TreeComparison::Kind::Equal && firstUnknown) {
    out.kind = TreeComparison::Kind::Unknown;
    out.path = *firstUnknown;
  }
  return out;
}

std::vector<Seed> default_seeds() {
  return {{"I", I()}, {"K", K()}, {"c0", church(0)}, {"c1", church(1)}, {"c2", church(2)}, {"Ω", Omega()}};
}

Term Context::term() const {
  Term t = Term::abs(binders, Term::hole());
  for (const auto& s : binderArgs) t = Term::app(t, s.term);
  for (const auto& s : args) t = Term::app(t, s.term);
  return t;
}

std::string Context::to_string() const {
  std::string s;
  if (binders.empty()) {
    s = "☐";
  } else {
    s = "(λ";
    for (std::size_t i = 0; i < binders.size(); ++i) s += (i ? " " : "") + binders[i];
    s += ".☐)";
    for (const auto& b : binderArgs) s += " " + b.name;
  }
  for (const auto& a : args) s += " " + a.name;
  return s;
}

Refutation obs_refute(const Term& m, const Term& n, const RefuteOptions& opts) {
  std::set<std::string> fv;
  free_names(m, fv);
  free_names(n, fv);
  const std::vector<std::string> binders(fv.begin(), fv.end());

  std::vector<Context> pending;
  auto add_contexts = [&](std::size_t size) {
    for (auto& args : tuples(opts.seeds, size - 1)) pending.push_back({{}, {}, std::move(args)});
    if (binders.empty() || size < 1 + binders.size()) return;
    for (auto& bargs : tuples(opts.seeds, binders.size()))
      for (auto& args : tuples(opts.seeds, size - 1 - binders.size())) pending.push_back({binders, bargs, args});
  };

  const ReduceOptions ro{opts.budget, true};
  auto evaluate = [&](const Context& c) {
    Term ct = c.term();
    return std::pair{find_form(plug(ct, m), opts.kind, ro), find_form(plug(ct, n), opts.kind, ro)};
  };
  auto separates = [&](const Reduction& a, const Reduction& b) {
    return a.found() && a.steps <= opts.budget / 4 && !b.found();
  };

  Refutation res;
  const std::size_t jobs = std::max<std::size_t>(1, opts.jobs);
  for (std::size_t size = 1; size <= opts.contextBound; ++size) {
    pending.clear();
    add_contexts(size);
    for (std::size_t start = 0; start < pending.size(); start += jobs) {
      const std::size_t end = std::min(pending.size(), start + jobs);
      std::vector<std::pair<Reduction, Reduction>> results;
      if (jobs == 1) {
        results.push_back(evaluate(pending[start]));
      } else {
        std::vector<std::future<std::pair<Reduction, Reduction>>> futures;
        for (std::size_t i = start; i < end; ++i)
          futures.push_back(std::async(std::launch::async, evaluate, std::cref(pending[i])));
        for (auto& f : futures) results.push_back(f.get());
      }
      for (std::size_t i = 0; i < results.size(); ++i) {
        ++res.contextsTried;
        auto& [a, b] = results[i];
        if (separates(a, b) || separates(b, a)) {
          res.context = pending[start + i];
          res.first = a;
          res.second = b;
          return res;
        }
      }
    }
  }
  return res;
}

}  // namespace streamspec::lambda
