//! Published subset-size tables, typed in by hand.

pub const SINGLE_480: [i64; 51] = [
    480, 480, 478, 478, 476, 476, 474, 472, 472, 470, 470, 468, 468, 466, 464, 464, 462, 462, 460,
    460, 458, 456, 456, 454, 454, 452, 452, 450, 450, 448, 446, 446, 444, 444, 442, 442, 440, 440,
    438, 438, 436, 436, 434, 432, 432, 430, 430, 428, 428, 426, 426,
];
pub const PAIRED_480: [i64; 51] = [
    480, 480, 478, 478, 476, 476, 474, 472, 472, 470, 470, 468, 468, 466, 464, 464, 462, 462, 460,
    460, 458, 458, 456, 454, 454, 452, 452, 450, 450, 448, 448, 446, 444, 444, 442, 442, 440, 440,
    438, 438, 436, 436, 434, 434, 432, 430, 430, 428, 428, 426, 426,
];
pub const SINGLE_488: [i64; 51] = [
    488, 488, 486, 486, 484, 482, 482, 480, 480, 478, 476, 476, 474, 474, 472, 472, 470, 468, 468,
    466, 466, 464, 462, 462, 460, 460, 458, 458, 456, 454, 454, 452, 452, 450, 450, 448, 448, 446,
    444, 444, 442, 442, 440, 440, 438, 438, 436, 436, 434, 432, 432,
];
pub const PAIRED_488: [i64; 51] = [
    488, 488, 486, 486, 484, 484, 482, 480, 480, 478, 478, 476, 474, 474, 472, 472, 470, 468, 468,
    466, 466, 464, 464, 462, 460, 460, 458, 458, 456, 456, 454, 452, 452, 450, 450, 448, 448, 446,
    446, 444, 442, 442, 440, 440, 438, 438, 436, 436, 434, 432, 432,
];
