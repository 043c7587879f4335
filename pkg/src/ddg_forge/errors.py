"""Exception hierarchy shared by every module.

Two families matter to callers (and to the CLI exit codes):

* ``InputError``: the caller asked for something outside an operation's
  domain (composite characteristic, even q, wrong shape, ...).
* ``VerificationError``: an object was built or read and failed one of its
  defining identities.  ``witness`` carries the first offending indices.
"""


class ForgeError(Exception):
    def __init__(self, message="", witness=None):
        super().__init__(message)
        self.witness = witness

    def __str__(self):
        msg = super().__str__()
        if self.witness is not None:
            return f"{msg} (witness: {self.witness})"
        return msg


class InputError(ForgeError, ValueError):
    pass


class VerificationError(ForgeError):
    pass
