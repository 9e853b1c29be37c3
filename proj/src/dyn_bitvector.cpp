#include "ttc/dyn_bitvector.hpp"

namespace ttc {

template class DynBitVector<DenseLeaf>;
template class DynBitVector<SparseLeaf>;

}  // namespace ttc
