#ifndef CAUSAL_SSD_DATASET_HPP
#define CAUSAL_SSD_DATASET_HPP

#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace causal_ssd {

/// Observational data: N rows, one labelled column per variable.
struct DatasetMatrix {
    std::vector<std::string> labels;
    Eigen::MatrixXd values;

    Eigen::Index rows() const { return values.rows(); }
    Eigen::Index cols() const { return values.cols(); }

    // Throws DomainError on duplicate labels, a shape mismatch, no rows or non-finite values.
    void validate() const;

    // Column index; throws InsufficientDataError naming the label.
    Eigen::Index column(const std::string& label) const;

    // Columns in the order given; throws InsufficientDataError listing every missing label.
    DatasetMatrix select(std::span<const std::string> wanted) const;
};

} // namespace causal_ssd

#endif // CAUSAL_SSD_DATASET_HPP
