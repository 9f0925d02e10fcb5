from .arith import ArithmeticDecoder, ArithmeticEncoder

__all__ = ["ArithmeticDecoder", "ArithmeticEncoder"]
