// Copyright 2026 The darkspan Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string_view>

namespace darkspan::simulate::data {

// Common concrete English words, alphabetical.
inline constexpr std::string_view kWordPool[] = {
    "account", "address", "advice", "agency", "agenda", "airport", "alarm", "album", "alley",
    "amount", "anchor", "angle", "animal", "ankle", "answer", "apartment", "appetite", "apple",
    "apron", "arch", "archive", "arena", "argument", "armor", "army", "aroma", "arrow", "artist",
    "asset", "atlas", "atom", "attic", "auction", "author", "autumn", "avenue", "avocado", "axis",
    "bacon", "badge", "baker", "balance", "ballad", "balloon", "ballot", "bamboo", "banana",
    "bandage", "bandit", "banker", "banner", "bargain", "barn", "barrel", "basin", "basket", "bath",
    "battery", "beach", "beacon", "bean", "beard", "beaver", "bedroom", "beef", "beetle", "bell",
    "belt", "bench", "berry", "bicycle", "blade", "blanket", "blender", "blizzard", "blood",
    "blossom", "board", "bone", "bonnet", "bonus", "boot", "border", "bottle", "bottom", "boulder",
    "bowl", "bracket", "brain", "branch", "bread", "breeze", "brick", "bridge", "broom", "brother",
    "brush", "bubble", "bucket", "buckle", "budget", "buffalo", "bulb", "bullet", "bundle",
    "bunker", "burger", "bush", "butter", "button", "cabin", "cable", "cactus", "cake", "calendar",
    "camera", "camp", "canal", "candle", "candy", "cannon", "canoe", "canvas", "canyon", "captain",
    "carbon", "card", "career", "cargo", "carpet", "carriage", "carrot", "cart", "castle", "cattle",
    "cave", "cavern", "cedar", "ceiling", "cell", "cellar", "cement", "cereal", "chain", "chair",
    "chalk", "champion", "channel", "chaos", "chapel", "charcoal", "chart", "cheese", "chef",
    "cherry", "chess", "chicken", "child", "chimney", "chin", "chip", "chorus", "cinema", "circle",
    "circus", "citizen", "clay", "cliff", "clinic", "cloak", "clock", "closet", "cloud", "clover",
    "coal", "coast", "coat", "cobalt", "coconut", "code", "coffee", "coin", "collar", "colony",
    "comedy", "comet", "compass", "concert", "copper", "copy", "coral", "corn", "corner", "costume",
    "cottage", "cotton", "couch", "council", "county", "cousin", "cow", "crab", "cradle", "crane",
    "crater", "crayon", "cream", "credit", "cricket", "crime", "crop", "crow", "crown", "crystal",
    "cube", "cup", "cupboard", "curtain", "cushion", "custom", "cycle", "dagger", "dairy", "damage",
    "dance", "danger", "dawn", "dealer", "debt", "decade", "deck", "deer", "dentist", "depot",
    "desert", "desk", "dial", "diamond", "diary", "diet", "dinner", "dish", "ditch", "dock",
    "doctor", "dollar", "dolphin", "domain", "dome", "donkey", "door", "dough", "dove", "dragon",
    "drawer", "dream", "driver", "drum", "duck", "dust", "duty", "eagle", "ear", "earth", "echo",
    "editor", "egg", "elbow", "elephant", "elk", "ember", "empire", "energy", "engine", "envelope",
    "error", "essay", "estate", "event", "exit", "eye", "fabric", "face", "factory", "fair",
    "falcon", "family", "famine", "fan", "farm", "farmer", "fault", "feast", "feather", "fence",
    "ferry", "fiber", "field", "film", "finger", "fire", "fish", "flag", "flame", "flock", "flood",
    "floor", "flour", "flower", "flute", "fog", "folder", "food", "foot", "forest", "fork",
    "fortune", "fossil", "fountain", "fox", "frame", "freight", "fruit", "fuel", "fund", "fur",
    "galaxy", "game", "garage", "garden", "garlic", "garment", "gas", "gate", "gazette", "gem",
    "ghost", "giant", "gift", "ginger", "girl", "glacier", "glass", "globe", "glove", "glue",
    "goat", "gold", "golf", "goose", "grain", "granite", "grape", "grass", "gravel", "gravy",
    "grid", "guest", "guide", "guitar", "gym", "hair", "hall", "hammer", "hand", "harbor", "harp",
    "harvest", "hat", "hawk", "head", "heart", "heat", "helmet", "herb", "hermit", "highway",
    "hill", "hobby", "hole", "honey", "horizon", "horn", "horse", "hospital", "host", "hotel",
    "house", "hunter", "ice", "idea", "ink", "insect", "iron", "island", "ivory", "jacket",
    "jaguar", "jar", "jaw", "jeans", "jelly", "jewel", "joke", "journal", "journey", "judge",
    "juice", "jungle", "kernel", "kettle", "key", "kid", "king", "kingdom", "kitchen", "kite",
    "kitten", "knee", "knife", "lab", "lace", "ladder", "lagoon", "lake", "lamb", "lamp", "land",
    "lane", "lantern", "laptop", "lawn", "lawyer", "leaf", "leather", "lecture", "leg", "lemon",
    "lens", "letter", "lever", "library", "lid", "light", "lily", "lime", "line", "lion", "lip",
    "liquid", "list", "lizard", "loaf", "lobster", "lock", "locker", "log", "loop", "lord",
    "lumber", "lunch", "lung", "machine", "magnet", "maid", "mail", "mango", "manor", "map",
    "marble", "market", "mask", "mast", "meadow", "meal", "meat", "medal", "melody", "menu",
    "merchant", "metal", "meteor", "milk", "mill", "mind", "mine", "mint", "mirror", "mist", "mole",
    "monk", "monkey", "moon", "mortar", "mosaic", "moss", "moth", "motor", "mountain", "mouse",
    "mouth", "mud", "muffin", "mule", "museum", "mushroom", "nail", "name", "napkin", "neck",
    "needle", "nephew", "nest", "net", "news", "night", "noise", "noodle", "nose", "note", "novel",
    "nugget", "nurse", "nut", "oak", "oar", "oasis", "oath", "ocean", "office", "oil", "olive",
    "onion", "orange", "orbit", "orchard", "organ", "oven", "owl", "owner", "oyster", "pad",
    "paddle", "page", "pail", "paint", "palace", "pan", "panel", "panther", "paper", "parcel",
    "park", "parrot", "party", "pasture", "path", "peach", "peanut", "pear", "pearl", "pebble",
    "pen", "pencil", "pepper", "permit", "piano", "pie", "pig", "pigeon", "pillow", "pilot", "pin",
    "pioneer", "pipe", "pirate", "pit", "pizza", "planet", "plant", "plaster", "plate", "plum",
    "pocket", "poet", "pole", "pond", "pool", "port", "portal", "pot", "potato", "powder",
    "prairie", "prism", "prize", "pump", "puppet", "puzzle", "pyramid", "quarry", "queen", "quilt",
    "quiz", "rabbit", "rack", "radar", "radio", "raft", "rail", "railway", "rain", "ram", "ranch",
    "rat", "raven", "ray", "recipe", "reed", "reef", "ribbon", "ring", "river", "road", "robe",
    "robot", "rock", "rocket", "roof", "room", "root", "rope", "rose", "rug", "ruler", "saddle",
    "sailor", "salad", "salmon", "salt", "sand", "sandal", "satellite", "sauce", "scale", "scarf",
    "scholar", "school", "scout", "screen", "sculpture", "sea", "seal", "seat", "seed", "shadow",
    "shark", "sheep", "shelf", "shell", "shelter", "shield", "ship", "shirt", "shoe", "shop",
    "shore", "silk", "silver", "singer", "sink", "sister", "skate", "skeleton", "sketch", "ski",
    "skin", "skirt", "sky", "sled", "slipper", "slope", "smoke", "snail", "snake", "snow", "soap",
    "sock", "socket", "sofa", "soil", "soldier", "song", "soup", "space", "spark", "spider",
    "sponge", "spoon", "spring", "square", "squirrel", "stable", "stage", "stair", "star", "statue",
    "steam", "steel", "stem", "stick", "stone", "storm", "stove", "straw", "stream", "street",
    "string", "student", "sugar", "suit", "summit", "sun", "sunset", "surgeon", "swamp", "swan",
    "sweater", "sword", "table", "tablet", "tail", "tailor", "tank", "tape", "taxi", "tea",
    "teacher", "team", "temple", "tennis", "tent", "theater", "thread", "throat", "thumb",
    "thunder", "ticket", "tiger", "tile", "timber", "toast", "tobacco", "toe", "tomato", "tongue",
    "tool", "tooth", "torch", "tower", "town", "toy", "tractor", "trail", "train", "tray",
    "treasure", "tree", "truck", "tube", "tulip", "tunnel", "turtle", "tutor", "twig", "umbrella",
    "uncle", "unit", "valley", "van", "vapor", "vase", "velvet", "vessel", "vest", "view",
    "village", "vine", "violin", "volcano", "vote", "voyage", "wagon", "waist", "wall", "walnut",
    "wand", "wardrobe", "wasp", "water", "wave", "wax", "weapon", "web", "whale", "wheat", "wheel",
    "whip", "whistle", "widow", "willow", "wind", "window", "wine", "wing", "winter", "wire",
    "wizard", "wolf", "wood", "wool", "workshop", "worm", "yacht", "yard", "yarn", "yolk", "zebra",
    "zinc", "zone",
};

}  // namespace darkspan::simulate::data
