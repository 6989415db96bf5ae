"""Prompt templates for the six request families.

The chat scaffolding (turn structure, wording, image ordering: positives
index 0-5 then negatives 0-5) is fixed; slots are substituted verbatim.
The only passages specific to the classification language are the
program-format instructions; docs/prompts.md lists them next to the
generic scripting-language phrasing they replace.
"""

from ..dsl import render_grammar_help
from ..dsl.ast import StubDecl
from .chat import ChatTurn, ImageAttachment

STUB_DOC_TEMPLATE = (
    "Returns the bounding boxes for all {obj}s in the image, if they exist, and None "
    "otherwise. The output array has the shape [N, 4] where N is the number of {obj}s "
    "in that image, and 4 corresponds to the bounding box format [x coordinate of upper "
    "left hand corner, y coordinate of upper left hand corner, width of the box, height "
    "of the box]."
)

PARAM_FORMAT_NOTE = (
    "Declare every tunable parameter on its own line using the declaration syntax "
    "'param <name> : <int|float> in (<low>, <high>)', choosing a range of plausible "
    "values for each."
)

_STUB_PROMPT = """\
You are solving a Bongard-style problem where you must write a program that outputs 'POSITIVE' if an input image is an example of the positive concept {rule_pos} and 'NEGATIVE' otherwise.
Consider the steps you must take to write this program.
List 0-3 objects you will need to detect in the image. Please output as a comma-separated list in the format <objects>object1, object2, object3</objects>.


Example: The positive concept is 'many squares' and the negative concept is 'few squares'.

Answer:
<objects>square</objects>
"""

_SYNTH_OPENING = """\
You are solving a Bongard-style problem where you will be given several examples of two hidden concepts, along with the rule for each of these examples. Your job is to write a program that will determine whether an input image is a positive or negative example of a concept. This program must generalize to images other than the examples I give you. These are the positive examples, which represent the concept {rule_pos}.
"""

_SYNTH_NEGATIVES = """\
These are the negative examples, which represent the concept {rule_neg}
Please structure your program as a detection phase, where you first detect the necessary objects in the image, and then a classification phase, where you perform a series of operations to determine whether each image is a positive or negative example. The following method stubs are given to you as suggestions of objects you might want to detect in the detection phase: {stubs}
"""

_SYNTH_INSTRUCTIONS = """\
Please write {n_programs} different programs in the classification language described below, each enclosed in Markdown backticks, that will determine whether an input image is an example of the positive concept {rule_pos}. Each program must define the entry classify_image(image) and, given an input image, will correctly output a 'POSITIVE' or 'NEGATIVE' classification. Use only the builtins of the classification language. {param_note} Think a bit before you start writing code.

{grammar}"""

_REPAIR_PROMPT_HEAD = """\
You are an expert programmer. You wrote the following program: {source}
"""

_REPAIR_EXCEPTION = """
When running the program, the following exception was encountered: {exception}
"""

_REPAIR_TAIL = """
The program returned the wrong output on {n_pos_wrong} images that were positive examples of the concept {rule_pos} and {n_neg_wrong} images that were negative examples.

Please output a repaired version of this program enclosed in Markdown backticks.
Write it in the same classification language, using only its builtins.

{param_note} Think a bit about what went wrong with the original implementation before you start writing code.
"""

_TRANSDUCE_OPENING = """\
You are solving a Bongard-style problem where you need to check whether an image corresponds to the rule {rule_pos}, which separates positive and negative images. The negative images adhere to the rule {rule_neg} instead.

Here are {n_shot} positive examples. Please look at them and then await the negative examples, which I will give you after this message. Answer with only ok and nothing else.
"""

_TRANSDUCE_NEGATIVES = """\
Here are {n_shot} negative examples. These do not fulfill the rule {rule_pos}, but instead adhere to the rule {rule_neg}. Please look at them, and then, finally, I will give you a last image which you should classify as positive (adheres to the positive rule) or negative (does not adhere to the positive rule, but instead to the negative rule). Answer with only ok and nothing else.
"""

_TRANSDUCE_FINAL = """\
Taking all prior information into consideration, given the following image, do you think it is positive, meaning it displays the concept '{rule_pos}'? Or is it negative and displays the concept '{rule_neg}'? First think about it, and then provide your answer in the following form:
Output enclosed in Markdown backticks either POSITIVE or NEGATIVE depending on your final decision. Do not produce any other output.
"""

_HYPO_FINAL = """\
Given these positive and negative images, please do the following:
1. Someone has given you the following rules: {example_rules}. Consider how these rules apply to the positive and negative examples. Which examples do each of them work on? Which examples do they fail on?
2. Output {n_sample} rules which predict when an image is positive. Please enclose each rule in <rule></rule>, e.g. <rule>contains red circle</rule>
"""

_BASELINE_OPENING = """\
You are solving a Bongard-style problem where to solve the problem you need to infer a hidden rule that separates positive and negative images. Pay attention to abstract geometric properties.
Here are {n_shot} positive examples. Please look at them and then await the negative examples, which I will give you after this message.
"""

_BASELINE_NEGATIVES = """\
Here are {n_shot} negative examples.

1. Analyze the positive examples (looking for what is common between them)
2. Analyze the negative examples (looking for what is common between them)
3. Compare negative and positive examples (looking for what is different between them)
4. Output a rule which predicts when an image is positive or negative.
"""

_HIDDEN_POS = "the hidden positive concept"
_HIDDEN_NEG = "the hidden negative concept"


def _attach(images):
    return tuple(ImageAttachment.from_image(img) for img in images)


def render_stub_doc(object_name: str) -> str:
    return STUB_DOC_TEMPLATE.format(obj=object_name)


def render_stubs(stubs) -> str:
    if not stubs:
        return "(none)"
    blocks = [f"find_{s.object_name}:\n    {s.doc}" for s in stubs]
    return "\n\n" + "\n\n".join(blocks)


def stub_request_turns(rule_pos: str) -> tuple[ChatTurn, ...]:
    return (ChatTurn("user", _STUB_PROMPT.format(rule_pos=rule_pos)),)


def synthesis_turns(rule_pos, rule_neg, positives, negatives, stubs, retrieved, n_programs):
    example = f"Example (for the rule '{retrieved.rule}'):\n```\n{retrieved.program_source}```"
    return (
        ChatTurn("user", _SYNTH_OPENING.format(rule_pos=rule_pos), images=_attach(positives)),
        ChatTurn("system", "I see you've uploaded the positive examples. Please upload the negative examples."),
        ChatTurn(
            "user",
            _SYNTH_NEGATIVES.format(rule_neg=rule_neg, stubs=render_stubs(stubs)),
            images=_attach(negatives),
        ),
        ChatTurn("system", "Please provide instructions for the program I need to write."),
        ChatTurn(
            "user",
            _SYNTH_INSTRUCTIONS.format(
                n_programs=n_programs,
                rule_pos=rule_pos,
                param_note=PARAM_FORMAT_NOTE,
                grammar=render_grammar_help(),
            ),
        ),
        ChatTurn("system", "Please provide an example of how to generate these programs."),
        ChatTurn("user", example),
    )


def repair_turns(source, exception_text, n_pos_wrong, n_neg_wrong, rule_pos):
    text = _REPAIR_PROMPT_HEAD.format(source=source)
    if exception_text:
        text += _REPAIR_EXCEPTION.format(exception=exception_text)
    text += _REPAIR_TAIL.format(
        n_pos_wrong=n_pos_wrong,
        n_neg_wrong=n_neg_wrong,
        rule_pos=rule_pos,
        param_note=PARAM_FORMAT_NOTE,
    )
    return (ChatTurn("user", text),)


def transduction_turns(rule_pos, rule_neg, positives, negatives, test_image):
    n_shot = len(positives)
    return (
        ChatTurn(
            "user",
            _TRANSDUCE_OPENING.format(rule_pos=rule_pos, rule_neg=rule_neg, n_shot=n_shot),
            images=_attach(positives),
        ),
        ChatTurn("system", "ok."),
        ChatTurn(
            "user",
            _TRANSDUCE_NEGATIVES.format(rule_pos=rule_pos, rule_neg=rule_neg, n_shot=n_shot),
            images=_attach(negatives),
        ),
        ChatTurn("system", "ok."),
        ChatTurn(
            "user",
            _TRANSDUCE_FINAL.format(rule_pos=rule_pos, rule_neg=rule_neg),
            images=_attach([test_image]),
        ),
    )


def hypothesis_turns(positives, negatives, example_rules, n_sample):
    rules_text = "; ".join(f"'{r}'" for r in example_rules) if example_rules else "(no prior rules available)"
    return (
        ChatTurn("user", _SYNTH_OPENING.format(rule_pos=_HIDDEN_POS), images=_attach(positives)),
        ChatTurn("system", "I see you've uploaded the positive examples. Please upload the negative examples."),
        ChatTurn(
            "user",
            _SYNTH_NEGATIVES.format(rule_neg=_HIDDEN_NEG, stubs="(none)"),
            images=_attach(negatives),
        ),
        ChatTurn(
            "system",
            "I see you've uploaded the negative examples. Please provide instructions for solving the Bongard problem.",
        ),
        ChatTurn("user", _HYPO_FINAL.format(example_rules=rules_text, n_sample=n_sample)),
    )


def baseline_solution_turns(positives, negatives):
    n_shot = len(positives)
    return (
        ChatTurn("user", _BASELINE_OPENING.format(n_shot=n_shot), images=_attach(positives)),
        ChatTurn(
            "system",
            "I see you've uploaded the positive examples. Please provide the negative examples for the "
            "Bongard problem, and I'll help you analyze the differences between the two groups in order "
            "to infer the hidden rule that separates positive and negative images.",
        ),
        ChatTurn("user", _BASELINE_NEGATIVES.format(n_shot=n_shot), images=_attach(negatives)),
    )


__all__ = [
    "PARAM_FORMAT_NOTE",
    "StubDecl",
    "baseline_solution_turns",
    "hypothesis_turns",
    "render_stub_doc",
    "render_stubs",
    "repair_turns",
    "stub_request_turns",
    "synthesis_turns",
    "transduction_turns",
]
