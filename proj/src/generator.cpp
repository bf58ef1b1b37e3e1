#include "pn2sc/generator.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <vector>

namespace pn2sc {

namespace {

class SpBuilder {
 public:
  SpBuilder(PetriNet& net, const SpSpec& spec)
      : net_(net), rng_(spec.seed), max_branch_(spec.max_branch) {}

  struct Fragment {
    Place* entry;
    Place* exit;
  };

  Fragment build(std::size_t budget) {
    if (budget == 1) {
      Place& p = new_place();
      return {&p, &p};
    }
    const bool parallel = budget >= 4 && max_branch_ >= 2 && below(2) == 0;
    return parallel ? build_parallel(budget) : build_series(budget);
  }

 private:
  // Modulo reduction keeps the stream identical across standard libraries,
  // unlike std::uniform_int_distribution.
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(rng_() % n); }

  Place& new_place() { return net_.add_place("p" + std::to_string(places_++)); }

  void connect(std::vector<Place*> pre, std::vector<Place*> post) {
    net_.add_transition("t" + std::to_string(transitions_++), pre, post);
  }

  Fragment build_series(std::size_t budget) {
    const std::size_t left = 1 + below(budget - 1);
    Fragment a = build(left);
    Fragment b = build(budget - left);
    connect({a.exit}, {b.entry});
    return {a.entry, b.exit};
  }

  Fragment build_parallel(std::size_t budget) {
    const std::size_t inner = budget - 2;
    const std::size_t widest = std::min(max_branch_, inner);
    const std::size_t branches = 2 + below(widest - 1);

    // Floyd's sampling of branches-1 distinct cut points in [1, inner-1].
    std::set<std::size_t> cuts;
    const std::size_t range = inner - 1;
    for (std::size_t j = range - (branches - 1) + 1; j <= range; ++j) {
      const std::size_t pick = 1 + below(j);
      if (!cuts.insert(pick).second) cuts.insert(j);
    }

    Place& entry = new_place();
    std::vector<Place*> heads;
    std::vector<Place*> tails;
    std::size_t previous = 0;
    cuts.insert(inner);
    for (std::size_t cut : cuts) {
      Fragment branch = build(cut - previous);
      heads.push_back(branch.entry);
      tails.push_back(branch.exit);
      previous = cut;
    }
    Place& exit = new_place();
    connect({&entry}, heads);
    connect(tails, {&exit});
    return {&entry, &exit};
  }

  PetriNet& net_;
  std::mt19937_64 rng_;
  std::size_t max_branch_;
  std::size_t places_ = 0;
  std::size_t transitions_ = 0;
};

}  // namespace

std::string sp_net_name(const SpSpec& spec) {
  return "sp" + std::to_string(spec.places) + "-" + kSpGenerator + "-seed" +
         std::to_string(spec.seed) + "-branch" + std::to_string(spec.max_branch);
}

PetriNet generate_sp(const SpSpec& spec) {
  if (spec.places < 1) throw PreconditionError("generate_sp needs at least one place");
  if (spec.max_branch < 2) throw PreconditionError("max_branch must be at least 2");
  PetriNet net(sp_net_name(spec));
  SpBuilder(net, spec).build(spec.places);
  return net;
}

}  // namespace pn2sc
