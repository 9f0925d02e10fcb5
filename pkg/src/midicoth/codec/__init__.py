from .ablation import AblationRow, layer_bit_accounting, total_improvement
from .container import Container
from .ledger import BitLedger, LedgerRow
from .pipeline import Pipeline, compress, compress_stream, decompress, decompress_stream

__all__ = [
    "AblationRow", "BitLedger", "Container", "LedgerRow", "Pipeline", "compress", "compress_stream",
    "decompress", "decompress_stream", "layer_bit_accounting", "total_improvement",
]
