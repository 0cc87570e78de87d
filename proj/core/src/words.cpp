// Generated from data/words.txt; keep both in sync.
#include "labelguide/scene.hpp"

namespace labelguide {

namespace {

constexpr std::array<std::string_view, 500> kWords = {
    "abacus", "adapter", "adhesive", "aerator", "airbrush", "alarm", "allen",
    "ammeter", "amplifier", "anchor", "angle", "antenna", "anvil", "apron", "arbor",
    "armature", "auger", "awl", "axe", "axle", "backsaw", "bandsaw", "barrel",
    "battery", "beaker", "bearing", "bellows", "bench", "binder", "bit", "blade",
    "blender", "blowtorch", "bobbin", "bolt", "bracket", "brad", "brush", "bucket",
    "buffer", "burner", "bushing", "cabinet", "cable", "caliper", "camera", "canister",
    "capacitor", "carabiner", "caster", "chain", "chisel", "chuck", "clamp",
    "clipboard", "coil", "compass", "compressor", "conduit", "crank", "crimper",
    "crowbar", "cutter", "dampener", "decanter", "depth-gauge", "detector", "dial",
    "die", "dipstick", "disk", "dispenser", "divider", "dolly", "dowel", "drafter",
    "drain", "dredger", "drill", "driver", "dropper", "drum", "duster", "dynamo",
    "easel", "edger", "ejector", "elbow", "electrode", "ellipsograph", "emery",
    "emitter", "encoder", "endmill", "engine", "epoxy", "eraser", "etcher", "evaporator",
    "exhaust", "extender", "extinguisher", "extractor", "eyelet", "eyepiece",
    "fan", "fastener", "faucet", "feeler", "ferrule", "fiberscope", "file", "filter",
    "fitting", "fixture", "flange", "flashlight", "flask", "float", "flywheel",
    "forceps", "forge", "fork", "funnel", "fuse", "gasket", "gauge", "gavel",
    "gear", "generator", "gimbal", "gimlet", "glider", "glove", "glue-gun", "goggles",
    "gouge", "grater", "grease", "grinder", "grip", "grommet", "guide", "gun",
    "gusset", "gyroscope", "hacksaw", "hammer", "handle", "hanger", "harness",
    "hatchet", "header", "headlamp", "heater", "helmet", "hex", "hinge", "hoist",
    "holder", "hook", "hopper", "hose", "hotplate", "hub", "hydrometer", "hygrometer",
    "igniter", "ignition", "imager", "impeller", "inclinometer", "incubator",
    "indicator", "inductor", "injector", "inkpad", "inlet", "insert", "inspector",
    "insulator", "intake", "interlock", "inverter", "ionizer", "iron", "isolator",
    "jack", "jackhammer", "jar", "jaw", "jerrycan", "jet", "jeweler", "jib",
    "jig", "jigsaw", "jockey", "jogger", "jointer", "joist", "journal", "joystick",
    "jug", "jumbo", "jumper", "junction", "kayak", "keel", "kelvinometer", "kerf",
    "kettle", "key", "keyboard", "keyhole", "keystone", "kicker", "kiln", "kingpin",
    "kit", "kludge", "knapsack", "kneepad", "knife", "knob", "knot", "knuckle",
    "ladder", "ladle", "lamp", "lancet", "lantern", "laser", "latch", "lathe",
    "lead", "lens", "level", "lever", "lifter", "light", "limiter", "linkage",
    "lock", "locknut", "lubricator", "lug", "magnet", "mallet", "mandrel", "manifold",
    "manometer", "marker", "mask", "mesh", "meter", "micrometer", "microscope",
    "mirror", "mitre", "mixer", "mold", "monitor", "mortar", "motor", "mount",
    "muffler", "multimeter", "nail", "nailer", "nameplate", "nebulizer", "needle",
    "nest", "netting", "nibbler", "nickel", "nipple", "node", "noisemaker", "nosepiece",
    "notcher", "notebook", "nozzle", "numerator", "nut", "nutdriver", "nylon",
    "o-ring", "oarlock", "obturator", "ocular", "odometer", "offset", "ohmmeter",
    "oiler", "opener", "optic", "orbiter", "organizer", "oscillator", "oscilloscope",
    "outlet", "outrigger", "outrunner", "oven", "overalls", "ozonizer", "paddle",
    "padlock", "pail", "pallet", "panel", "pen", "pencil", "pestle", "pickaxe",
    "pin", "pipe", "pipette", "piston", "plane", "pliers", "plug", "plumb", "propeller",
    "protractor", "pulley", "pump", "punch", "quadpod", "quadrant", "quadrat",
    "quarrel", "quartz", "quench", "quencher", "quencher-tank", "quickclamp",
    "quill", "quiltbar", "quilter", "quiver", "quoin", "rack", "radiator", "rake",
    "ramp", "rangefinder", "rasp", "ratchet", "reamer", "receiver", "reel", "regulator",
    "relay", "resistor", "respirator", "rheostat", "rig", "ring", "rivet", "roller",
    "router", "ruler", "sander", "saw", "scale", "scalpel", "scissors", "scraper",
    "screw", "screwdriver", "seal", "sensor", "shears", "shim", "shovel", "sieve",
    "sledge", "socket", "solder", "spanner", "spatula", "spirit-level", "spring",
    "stapler", "stopwatch", "strainer", "tachometer", "tap", "tape", "tarp",
    "tensiometer", "tensioner", "tester", "thermometer", "thermostat", "thimble",
    "timer", "tongs", "toolbox", "torch", "torque-wrench", "transformer", "tripod",
    "trowel", "tube", "turbine", "tweezers", "twine", "u-bolt", "ullage", "ulnar-brace",
    "ultrasonic", "umbrella", "unclamp", "uncoiler", "undercutter", "underlay",
    "unicycle", "uniform", "unit", "unloader", "updraft", "upholsterer", "uplighter",
    "uprights", "urn", "usb-hub", "utensil", "vacuometer", "vacuum", "valve",
    "vane", "vaporizer", "varnish", "vat", "vent", "ventilator", "vernier", "vessel",
    "vial", "vibrator", "vice", "viewer", "vise", "visor", "voltmeter", "volumeter",
    "vortex", "wagon", "wand", "washer", "watch", "wedge", "welder", "wheel",
    "whetstone", "whisk", "winch", "winder", "windlass", "wiper", "wire", "wirebrush",
    "wok", "workbench", "worklight", "wrecker", "wrench", "wringer", "x-clamp",
    "x-ray", "xenon-lamp", "xerograph", "xray-film", "xylometer", "xylophone",
    "xyst", "yagi-antenna", "yard-arm", "yarder", "yardstick", "yarn", "yarn-winder",
    "yaw-gauge", "yeast-vat", "yoke", "yucca-saw", "zapper", "zeolite-filter",
    "zero-gauge", "zester", "zinc-plate", "zipper", "zirconia-disc", "zither",
    "zone-valve", "zoom-lens",
};

}  // namespace

std::span<const std::string_view> word_list() { return kWords; }

}  // namespace labelguide
