from flatlab import FlatlabError


class KernelError(FlatlabError):
    pass


class InvalidArgumentError(KernelError):
    pass


class RingMismatchError(KernelError):
    pass


class RankMismatchError(KernelError):
    pass


class NotGroebnerBasisError(KernelError):
    pass


class ResourceLimitError(KernelError):
    pass
