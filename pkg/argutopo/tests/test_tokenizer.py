from argutopo.text_embedding.tokenizer import TokenPolicy, tokenize


def test_punctuation_and_case():
    tokens = tokenize("They do not have enough support, so there is no way they can win.")
    assert tokens.tokens[-1] == "win"
    assert "support" in tokens.tokens
    assert tokens.tokens[0] == "they"
    assert len(tokens) == 14


def test_inner_apostrophe_survives():
    assert tokenize("Yeah, I think it's good.").tokens == ("yeah", "i", "think", "it's", "good")


def test_punctuation_only_tokens_are_dropped():
    assert tokenize("well ... — fine!").tokens == ("well", "fine")


def test_empty_text():
    assert len(tokenize("")) == 0
    assert len(tokenize("   \n\t ")) == 0


def test_policy_off():
    tokens = tokenize("Hello, World", TokenPolicy(lowercase=False, strip_punctuation=False))
    assert tokens.tokens == ("Hello,", "World")


def test_spans_point_into_text():
    text = "  (Camel) asked"
    tokens = tokenize(text, TokenPolicy(lowercase=False))
    assert [text[a:b] for a, b in tokens.spans] == ["Camel", "asked"]
