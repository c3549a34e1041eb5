import pandas as pd
from sklearn.model_selection import train_test_split
from sklearn.naive_bayes import MultinomialNB
from sklearn.metrics import accuracy_score
from sklearn.feature_extraction.text import CountVectorizer, TfidfTransformer

data = pd.read_csv("spam.csv")
text = data["text"]
y = data["label"]

def predictAndReport(train, test):
    model = MultinomialNB()
    model.fit(train, spamLabelTrain)
    predicted = model.predict(test)
    print(accuracy_score(spamLabelTest, predicted))

# unknown words in test data leak into training data
wordsVectorizer = CountVectorizer().fit(text)
wordsVector = wordsVectorizer.transform(text)
invTransformer = TfidfTransformer().fit(wordsVector)
invFreqOfWords = invTransformer.transform(wordsVector)
X = pd.DataFrame(invFreqOfWords.toarray())

train, test, spamLabelTrain, spamLabelTest = train_test_split(X, y, test_size = 0.5)
predictAndReport(train = train, test = test)
