#pragma once

#include "treelie/snf.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace treelie::abelian {

using zlin::Int;
using zlin::Mat;
using zlin::SmithForm;
using zlin::Vec;

// Relator row in sparse form: (generator index, coefficient) pairs.
using SparseRow = std::vector<std::pair<int, Int>>;

struct GroupReport {
    long free_rank = 0;
    std::vector<Int> torsion;  // invariant factors > 1, divisibility chain
    int generators = 0;
    long relators = 0;
};

// Finitely presented abelian group: free abelian on named generators modulo
// the row span of the relators. The presentation is split into connected
// components of the generator/relator incidence graph before any SNF runs,
// which keeps the dense core small for multigraded presentations.
class PresentedAbelianGroup {
  public:
    PresentedAbelianGroup() = default;
    PresentedAbelianGroup(std::vector<std::string> generator_names,
                          std::vector<SparseRow> relators, std::string name = "");

    const std::string& name() const { return name_; }
    int num_generators() const { return int(gen_names_.size()); }
    long num_relators() const { return num_relators_; }
    const std::string& generator_name(int i) const { return gen_names_[i]; }
    const std::vector<std::string>& generator_names() const { return gen_names_; }

    long free_rank() const { return free_rank_; }
    const std::vector<Int>& torsion() const { return torsion_; }
    bool is_trivial() const { return free_rank_ == 0 && torsion_.empty(); }

    // Canonical coset representative; reduce is idempotent and reduce(v) == 0
    // exactly when v lies in the relator span.
    Vec reduce(const Vec& v) const;
    bool is_zero_element(const Vec& v) const { return zlin::is_zero(reduce(v)); }
    bool equal_elements(const Vec& a, const Vec& b) const;

    GroupReport report() const;

    const std::vector<SparseRow>& relator_rows() const { return relators_; }
    Mat dense_relator_matrix() const;  // materialized on demand

  private:
    struct Component {
        std::vector<int> gens;         // global generator indices
        std::map<int, int> local;      // global -> local
        SmithForm snf;                 // SNF of the dense component relators
        int n = 0;                     // generators in this component
    };

    std::string name_;
    std::vector<std::string> gen_names_;
    std::vector<SparseRow> relators_;
    long num_relators_ = 0;
    long free_rank_ = 0;
    std::vector<Int> torsion_;
    std::vector<std::shared_ptr<Component>> comps_;
    std::vector<int> comp_of_gen_;  // -1 when the generator meets no relator
};

// Homomorphism between presented groups, given on generators. Row i of
// `images` is the image of domain generator i written over codomain
// generators. Well-definedness is a property to be certified, not assumed.
struct GroupHom {
    const PresentedAbelianGroup* dom = nullptr;
    const PresentedAbelianGroup* cod = nullptr;
    Mat images;
    std::string name;
};

Vec apply_hom(const GroupHom& h, const Vec& x);

struct HomCertificate {
    bool well_defined = false;
    std::optional<int> offending_relator;  // index into dom relator rows
    PresentedAbelianGroup kernel;
    PresentedAbelianGroup cokernel;
    bool injective = false;
    bool surjective = false;
};

// Full certification: relators map to zero, kernel and cokernel presented via
// integer lattice computations.
HomCertificate certify(const GroupHom& h);

// Basis of the lattice { x in Z^dom : h(x) == 0 in codomain }, written over
// domain generators. Contains the domain relator span.
std::vector<Vec> preimage_of_zero_lattice(const GroupHom& h);

struct JunctionReport {
    bool composes_to_zero = false;
    bool kernel_inside_image = false;
    std::optional<Vec> witness;  // kernel element of the middle group not in the image
};

struct ExactnessReport {
    bool well_defined = true;
    std::vector<JunctionReport> junctions;
    bool exact() const {
        if (!well_defined) return false;
        for (auto& j : junctions)
            if (!j.composes_to_zero || !j.kernel_inside_image) return false;
        return true;
    }
};

// Checks im(seq[i]) == ker(seq[i+1]) at every interior node. Callers add
// injectivity/surjectivity checks at the ends via certify().
ExactnessReport verify_exact(const std::vector<const GroupHom*>& seq);

// Invariant factors of a direct sum given the blocks' divisor multiset:
// repeated gcd/lcm smoothing into a divisibility chain.
std::vector<Int> invariant_factor_chain(std::vector<Int> divisors);

}  // namespace treelie::abelian
