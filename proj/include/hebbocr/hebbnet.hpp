#pragma once

#include "hebbocr/types.hpp"

#include <map>
#include <optional>
#include <span>
#include <vector>

namespace hebbocr {

/// How the per-class target is assigned during training.
///   OneVsRest:    every sample updates every neuron, target +1 for the
///                 neuron's own class and -1 for all others.
///   PositiveOnly: a neuron only sees its own class's samples, target +1.
enum class Regime { OneVsRest, PositiveOnly };

/// One class's output neuron: integer weight vector plus a bias trained as
/// a weight on a constant +1 input.
struct ClusterNeuron {
    char label = '?';
    WeightVector weights;
    Scalar bias = 0;
};

struct TrainingSample {
    char label = '?';
    FeatureVector input;
};

/// The trained model: one neuron per class, kept sorted by label code point.
struct KnowledgeBase {
    GridShape grid;
    Regime regime = Regime::OneVsRest;
    int epochs_trained = 0;
    int format_version = 1;
    std::vector<ClusterNeuron> neurons;

    int feature_length() const noexcept { return grid.size(); }
    const ClusterNeuron* find(char label) const;
};

bool operator==(const ClusterNeuron& a, const ClusterNeuron& b);
bool operator==(const KnowledgeBase& a, const KnowledgeBase& b);

/// Classification outcome. recognized is empty when no neuron wins:
/// top score not strictly positive, or a tie at the top.
struct Decision {
    std::optional<char> recognized;
    std::map<char, Scalar> net_inputs;
};

/// Fresh knowledge base with all weights and biases zero.
/// Throws DuplicateLabel if labels repeat.
KnowledgeBase init_zero(std::span<const char> labels, GridShape grid,
                        Regime regime = Regime::OneVsRest);

/// Single additive update: weights += input * target, bias += target.
ClusterNeuron hebb_update(ClusterNeuron neuron, const FeatureVector& input, int target);

/// One pass over the samples under kb's regime; epochs_trained increments.
KnowledgeBase train_epoch(KnowledgeBase kb, std::span<const TrainingSample> samples);

/// train_epoch applied `epochs` times. The update rule is linear and
/// order-free, so the result equals epochs times the one-epoch weights.
KnowledgeBase train(KnowledgeBase kb, std::span<const TrainingSample> samples, int epochs);

/// bias + <weights, input>.
Scalar net_input(const ClusterNeuron& neuron, const FeatureVector& input);

/// Scores every neuron. Recognized iff exactly one neuron attains the
/// maximum score and that score is strictly positive.
Decision classify(const KnowledgeBase& kb, const FeatureVector& input);

} // namespace hebbocr
