#include "topicdx/features.hpp"

namespace topicdx::features {

namespace {

// Category names follow the common 93-column word-count layout; only a small
// illustrative vocabulary is mapped. Users supply their own dictionary.
constexpr const char* kExampleCategories = R"(# example word-category dictionary
[categories]
wc
analytic
clout
authentic
tone
wps
sixltr
dic
function
pronoun
ppron
i
we
you
shehe
they
ipron
article
prep
auxverb
adverb
conj
negate
verb
adj
compare
interrog
number
quant
affect
posemo
negemo
anx
anger
sad
social
family
friend
female
male
cogproc
insight
cause
discrep
tentat
certain
differ
percept
see
hear
feel
bio
body
health
sexual
ingest
drives
affiliation
achieve
power
reward
risk
focuspast
focuspresent
focusfuture
relativ
motion
space
time
work
leisure
home
money
relig
death
informal
swear
netspeak
assent
nonflu
filler
allpunc
period
comma
colon
semic
qmark
exclam
dash
quote
apostro
parenth
otherp
[entries]
i : function,pronoun,ppron,i
me : function,pronoun,ppron,i
my : function,pronoun,ppron,i
myself : function,pronoun,ppron,i
we : function,pronoun,ppron,we
us : function,pronoun,ppron,we
you : function,pronoun,ppron,you
he : function,pronoun,ppron,shehe
she : function,pronoun,ppron,shehe
they : function,pronoun,ppron,they
it : function,pronoun,ipron
the : function,article
a : function,article
an : function,article
in : function,prep,space
on : function,prep,space
with : function,prep
about : function,prep
and : function,conj
but : function,conj,differ
not : function,negate
no : function,negate
never : function,negate,time
don't : function,negate,auxverb
can't : function,negate,auxverb
happy : affect,posemo
happi* : affect,posemo
good : affect,posemo
great : affect,posemo
love* : affect,posemo,affiliation
nice : affect,posemo
enjoy* : affect,posemo
glad : affect,posemo
proud : affect,posemo,achieve
sad : affect,negemo,sad
lonel* : affect,negemo,sad
cry* : affect,negemo,sad
depress* : affect,negemo,sad
hopeless* : affect,negemo,sad
worr* : affect,negemo,anx
nervous* : affect,negemo,anx
afraid : affect,negemo,anx
anxi* : affect,negemo,anx
angry : affect,negemo,anger
mad : affect,negemo,anger
hate* : affect,negemo,anger
annoy* : affect,negemo,anger
hurt* : affect,negemo
awful : affect,negemo
terrible : affect,negemo
abandon* : affect,negemo,sad
mom : social,family,female
dad : social,family,male
brother* : social,family,male
sister* : social,family,female
family : social,family
friend* : social,friend,affiliation
talk* : social,verb
think : cogproc,insight,verb
know : cogproc,insight,verb
because : cogproc,cause
maybe : cogproc,tentat
always : cogproc,certain,time
sleep* : bio,health
tired : bio,health
doctor* : bio,health
therap* : bio,health
sick : bio,health
eat* : bio,ingest
job* : work
work* : work
school : work
travel* : leisure,motion
music : leisure,hear
movie* : leisure,see
home : home
house : home
money : money
pay* : money
die* : death
death : death
was : focuspast,auxverb
were : focuspast,auxverb
did : focuspast,auxverb
will : focusfuture,auxverb
now : focuspresent,time
today : focuspresent,time
lately : time
yes : assent
yeah : assent
okay : assent
um : nonflu
uh : nonflu
hmm : nonflu
)";

constexpr const char* kExampleRules = R"({
  "rules": [
    {"topic": 76, "categories": [
      {"name": "no_change", "phrases": ["not really", "haven't noticed", "no changes", "nothing has changed"]},
      {"name": "changed", "phrases": ["i have noticed", "i've noticed", "more irritable", "changed a lot"]}]},
    {"topic": 77, "categories": [
      {"name": "no", "phrases": ["no i haven't", "no i have not", "never been diagnosed"]},
      {"name": "yes", "phrases": ["i was diagnosed", "yes i have", "i have been diagnosed"]}]},
    {"topic": 78, "categories": [
      {"name": "easy", "phrases": ["no problem", "pretty easy", "very easy", "fairly easy"]},
      {"name": "fair", "phrases": ["it depends", "sometimes"]},
      {"name": "hard", "phrases": ["difficult", "hard", "trouble sleeping", "insomnia"]}]},
    {"topic": 79, "categories": [
      {"name": "not_close", "phrases": ["not close", "not very close", "distant", "don't talk"]},
      {"name": "close", "phrases": ["very close", "really close", "pretty close"]}]},
    {"topic": 80, "categories": [
      {"name": "negative", "phrases": ["not good", "bad", "down", "depressed", "terrible"]},
      {"name": "neutral", "phrases": ["okay", "alright", "so so"]},
      {"name": "positive", "phrases": ["good", "great", "pretty well"]}]},
    {"topic": 81, "categories": [
      {"name": "introvert", "phrases": ["introvert", "shy"]},
      {"name": "outgoing", "phrases": ["extrovert", "outgoing"]},
      {"name": "both", "phrases": ["in between", "a little of both"]}]},
    {"topic": 82, "categories": [
      {"name": "no", "phrases": ["no i haven't", "no i have not", "never been diagnosed"]},
      {"name": "yes", "phrases": ["i was diagnosed", "yes i have", "i have been diagnosed"]}]},
    {"topic": 83, "categories": [
      {"name": "not_useful", "phrases": ["not useful", "not helpful", "waste of time"]},
      {"name": "useful", "phrases": ["useful", "helpful", "it helps"]}]}
  ]
}
)";

}  // namespace

const WordCategoryDictionary& example_word_categories() {
  static const WordCategoryDictionary dict = parse_word_categories(kExampleCategories);
  return dict;
}

const std::vector<KeyTopicRule>& example_key_topic_rules() {
  static const std::vector<KeyTopicRule> rules = parse_key_topic_rules(kExampleRules);
  return rules;
}

}  // namespace topicdx::features
