#include "causal_ssd/dataset.hpp"

#include <algorithm>
#include <set>

#include "causal_ssd/errors.hpp"

namespace causal_ssd {

void DatasetMatrix::validate() const {
    if (static_cast<Eigen::Index>(labels.size()) != values.cols())
        throw DomainError("dataset label count does not match its columns");
    if (std::set<std::string>(labels.begin(), labels.end()).size() != labels.size())
        throw DomainError("dataset labels must be distinct");
    if (values.rows() < 1) throw DomainError("dataset has no rows");
    if (!values.allFinite()) throw DomainError("dataset contains non-finite values");
}

Eigen::Index DatasetMatrix::column(const std::string& label) const {
    const auto it = std::find(labels.begin(), labels.end(), label);
    if (it == labels.end()) throw InsufficientDataError("data has no column for node '" + label + "'");
    return static_cast<Eigen::Index>(it - labels.begin());
}

DatasetMatrix DatasetMatrix::select(std::span<const std::string> wanted) const {
    std::vector<Eigen::Index> idx;
    std::string missing;
    for (const auto& w : wanted) {
        const auto it = std::find(labels.begin(), labels.end(), w);
        if (it == labels.end()) {
            missing += missing.empty() ? w : ", " + w;
            continue;
        }
        idx.push_back(static_cast<Eigen::Index>(it - labels.begin()));
    }
    if (!missing.empty()) throw InsufficientDataError("data is missing columns for nodes: " + missing);
    DatasetMatrix out;
    out.labels.assign(wanted.begin(), wanted.end());
    out.values = values(Eigen::all, idx);
    return out;
}

} // namespace causal_ssd
