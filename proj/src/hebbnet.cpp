#include "hebbocr/hebbnet.hpp"

#include "hebbocr/error.hpp"

#include <algorithm>
#include <string>

namespace hebbocr {

namespace {

void check_length(const FeatureVector& input, Eigen::Index expected, const char* what) {
    if (input.size() != expected) {
        fail(ErrorCode::DimensionMismatch,
             std::string(what) + " has length " + std::to_string(input.size()) +
                 ", expected " + std::to_string(expected));
    }
}

} // namespace

const ClusterNeuron* KnowledgeBase::find(char label) const {
    const auto it = std::find_if(neurons.begin(), neurons.end(),
                                 [label](const ClusterNeuron& n) { return n.label == label; });
    return it == neurons.end() ? nullptr : &*it;
}

bool operator==(const ClusterNeuron& a, const ClusterNeuron& b) {
    return a.label == b.label && a.bias == b.bias && a.weights.size() == b.weights.size() &&
           (a.weights.array() == b.weights.array()).all();
}

bool operator==(const KnowledgeBase& a, const KnowledgeBase& b) {
    return a.grid == b.grid && a.regime == b.regime && a.epochs_trained == b.epochs_trained &&
           a.format_version == b.format_version && a.neurons == b.neurons;
}

KnowledgeBase init_zero(std::span<const char> labels, GridShape grid, Regime regime) {
    require(!labels.empty(), ErrorCode::InvalidArgument, "label set is empty");
    require(grid.rows >= 1 && grid.cols >= 1, ErrorCode::InvalidArgument,
            "grid must be at least 1x1");

    std::vector<char> sorted(labels.begin(), labels.end());
    std::sort(sorted.begin(), sorted.end());
    const auto dup = std::adjacent_find(sorted.begin(), sorted.end());
    if (dup != sorted.end()) {
        fail(ErrorCode::DuplicateLabel, std::string("duplicate label: ") + *dup);
    }

    KnowledgeBase kb;
    kb.grid = grid;
    kb.regime = regime;
    kb.neurons.reserve(sorted.size());
    for (const char label : sorted) {
        kb.neurons.push_back({label, WeightVector::Zero(grid.size()), 0});
    }
    return kb;
}

ClusterNeuron hebb_update(ClusterNeuron neuron, const FeatureVector& input, int target) {
    check_length(input, neuron.weights.size(), "input");
    neuron.weights += input * static_cast<Scalar>(target);
    neuron.bias += target;
    return neuron;
}

KnowledgeBase train_epoch(KnowledgeBase kb, std::span<const TrainingSample> samples) {
    for (const TrainingSample& s : samples) {
        check_length(s.input, kb.feature_length(), "sample input");
        if (kb.find(s.label) == nullptr) {
            fail(ErrorCode::UnknownLabel, std::string("sample label not in knowledge base: ") + s.label);
        }
    }
    for (ClusterNeuron& neuron : kb.neurons) {
        for (const TrainingSample& s : samples) {
            if (s.label == neuron.label) {
                neuron.weights += s.input;
                neuron.bias += 1;
            } else if (kb.regime == Regime::OneVsRest) {
                neuron.weights -= s.input;
                neuron.bias -= 1;
            }
        }
    }
    kb.epochs_trained += 1;
    return kb;
}

KnowledgeBase train(KnowledgeBase kb, std::span<const TrainingSample> samples, int epochs) {
    require(epochs >= 1, ErrorCode::InvalidArgument, "epochs must be >= 1");
    for (int e = 0; e < epochs; ++e) {
        kb = train_epoch(std::move(kb), samples);
    }
    return kb;
}

Scalar net_input(const ClusterNeuron& neuron, const FeatureVector& input) {
    check_length(input, neuron.weights.size(), "input");
    return neuron.bias + neuron.weights.dot(input);
}

Decision classify(const KnowledgeBase& kb, const FeatureVector& input) {
    require(!kb.neurons.empty(), ErrorCode::InvalidArgument, "knowledge base has no neurons");

    Decision decision;
    Scalar best = 0;
    int best_count = 0;
    char best_label = '?';
    for (const ClusterNeuron& neuron : kb.neurons) {
        const Scalar score = net_input(neuron, input);
        decision.net_inputs.emplace(neuron.label, score);
        if (best_count == 0 || score > best) {
            best = score;
            best_count = 1;
            best_label = neuron.label;
        } else if (score == best) {
            ++best_count;
        }
    }
    if (best_count == 1 && best > 0) {
        decision.recognized = best_label;
    }
    return decision;
}

} // namespace hebbocr
