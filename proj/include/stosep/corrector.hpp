#pragma once

// One-shot linear correctors: a corrector flags inputs that look like a
// known error situation, so a wrapper can reroute the legacy system's
// output. Training is closed-form only: a single error point, a class-mean
// discriminant, or a clustered ensemble of discriminants. Decisions happen
// in whitened coordinates; the ensemble carries the whitening model and
// applies it internally.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "stosep/preprocess.hpp"
#include "stosep/types.hpp"

namespace stosep::corrector {

enum class CorrectorKind { single_point, fisher, cluster_centroid };

const char* kind_name(CorrectorKind k);
CorrectorKind kind_from_name(const std::string& name);

// Linear decision in whitened coordinates: fires iff (weights, z) > threshold.
struct Corrector {
    std::vector<double> weights;  // never all zero
    double threshold = 0.0;       // +inf makes a corrector that never fires
    CorrectorKind kind = CorrectorKind::single_point;
};

struct CorrectorEnsemble {
    WhiteningModel preprocessing;    // shared by all members; identity if trained pre-whitened
    std::vector<Corrector> members;  // at least one
    double alpha = 0.0;              // training threshold, recorded for provenance
};

// Threshold rule for the discriminant correctors. midpoint puts the
// threshold halfway between the projected class means; quantile(q) puts it
// at the q-quantile of the projected normals, capping expected damage near
// 1 - q. Raising q never increases damage.
struct FisherThreshold {
    enum class Kind { midpoint, quantile };
    Kind kind = Kind::midpoint;
    double q = 0.0;
    static FisherThreshold midpoint() { return {}; }
    static FisherThreshold quantile(double q);
};

// Corrector for one known error point (whitened): weights = x_err,
// threshold = alpha * (x_err, x_err). Flags exactly the open region that
// the threshold test excludes around x_err.
Corrector train_single(const double* x_err, std::size_t d, double alpha);

// Class-mean discriminant (whitened coordinates, where within-class
// covariance is identity): weights = mean(errors) - mean(normals).
Corrector train_fisher(const DataMatrix& errors, const DataMatrix& normals,
                       const FisherThreshold& rule = FisherThreshold::midpoint());

// Cluster the errors, then train one discriminant per cluster against the
// normals. k = 1 reproduces train_fisher exactly. alpha is recorded on the
// ensemble but plays no role in discriminant training. Returns an ensemble
// with identity preprocessing (inputs were already whitened).
CorrectorEnsemble train_clustered(const DataMatrix& errors, const DataMatrix& normals,
                                  std::size_t k, const FisherThreshold& rule, double alpha,
                                  std::uint64_t seed);

struct Decision {
    bool high_risk = false;
    std::vector<std::size_t> firing;  // indices of members that fired
};

// Whiten z through the ensemble's model, then OR the members.
Decision apply(const CorrectorEnsemble& ens, const double* z, std::size_t d);
std::vector<Decision> apply_batch(const CorrectorEnsemble& ens, const DataMatrix& Z);

struct EvaluationReport {
    std::size_t errors_total = 0;
    std::size_t errors_flagged = 0;
    double errors_corrected = 0.0;  // flagged fraction of the error set
    std::size_t normals_total = 0;
    std::size_t normals_flagged = 0;
    double damage = 0.0;            // flagged fraction of the normal set
    std::size_t overlap_count = 0;  // points (either set) fired on by > 1 member
};

EvaluationReport evaluate(const CorrectorEnsemble& ens, const DataMatrix& test_errors,
                          const DataMatrix& test_normals);

// End-to-end training from raw coordinates: fit whitening on the normals
// (the system's own operating distribution), whiten both sets, then train
// per mode. single_point makes one corrector per error row.
struct TrainOptions {
    CorrectorKind mode = CorrectorKind::single_point;
    double alpha = 0.8;
    FisherThreshold rule = FisherThreshold::midpoint();
    std::size_t k = 1;
    std::uint64_t seed = 0;
    RetentionRule retention = RetentionRule::condition_number(10.0);
};
CorrectorEnsemble train_pipeline(const DataMatrix& raw_errors, const DataMatrix& raw_normals,
                                 const TrainOptions& opt);

}  // namespace stosep::corrector
