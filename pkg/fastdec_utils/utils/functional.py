import typing as tp


def is_iter(obj) -> bool:
    """
    Checks if an object is iterable by
    trying to use the iter function on it.
    """
    try:
        iter(obj)
    except TypeError:
        return False
    return True


def bitmask_members(mask: int) -> tp.List[int]:
    """
    Positions of the set bits of `mask`, ascending.

    Example:
    --------
        >>> bitmask_members(0b1011)
        [0, 1, 3]
    """
    members = []
    position = 0
    while mask:
        if mask & 1:
            members.append(position)
        mask >>= 1
        position += 1
    return members


def bitmask_of(members: tp.Iterable[int]) -> int:
    mask = 0
    for member in members:
        mask |= 1 << member
    return mask
