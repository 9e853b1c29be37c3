#include "ttc/interval_set.hpp"

namespace ttc {

template class IntervalSet<DenseLeaf>;
template class IntervalSet<SparseLeaf>;

}  // namespace ttc
