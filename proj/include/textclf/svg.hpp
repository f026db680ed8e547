#pragma once

#include <span>
#include <string>

#include "textclf/eval.hpp"

namespace textclf {

// Accuracy vs. training-set size, with a one-standard-deviation band.
std::string learning_curve_svg(std::span<const LearningCurvePoint> points);

// Row-normalized heatmap of a gold-by-predicted count matrix, raw counts
// and row percentages printed in the cells.
std::string confusion_heatmap_svg(const ConfusionMatrix& confusion);

}  // namespace textclf
